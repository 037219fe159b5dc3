//! Chevalley structure constants `N_{α,β}` by the extraspecial-pair method.
//!
//! Positive roots are ordered by height, then lexicographically (the order of
//! `RootSystem::roots`). For each non-simple positive root ξ the extraspecial pair
//! `(α₀, β₀)` is the pair `α₀ + β₀ = ξ`, `α₀ ≺ β₀`, with `α₀` minimal; there `N = +(p+1)`.
//! All other constants follow from antisymmetry, `N_{-α,-β} = -N_{α,β}` and the
//! relation `N_{α,β}/(γ,γ) = N_{β,γ}/(α,α) = N_{γ,α}/(β,β)` for `α+β+γ = 0`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{RootSystem, RootType};

/// Bumped whenever the sign convention changes; cache files with another version are ignored.
pub const CONVENTION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyConstants {
    n_roots: usize,
    /// `table[a * n_roots + b]`, zero when `α+β` is not a root.
    table: Vec<i8>,
}

struct Builder<'a> {
    rs: &'a RootSystem,
    pos: BTreeMap<(usize, usize), i64>,
}

impl Builder<'_> {
    /// `N_{a,b}` for any pair whose sum is a root, using only positive pairs already fixed.
    fn get(&self, a: usize, b: usize) -> i64 {
        let rs = self.rs;
        let s = rs.sum(a, b).expect("sum is a root");
        match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) => {
                if a < b {
                    self.pos[&(a, b)]
                } else {
                    -self.pos[&(b, a)]
                }
            }
            (false, false) => -self.get(rs.negative(a), rs.negative(b)),
            (false, true) => -self.get(b, a),
            (true, false) => {
                if rs.is_positive(s) {
                    // γ = -ξ; N_{a,b} = (γ,γ)/(a,a) N_{b,γ} = -(ξ,ξ)/(a,a) N_{-b,ξ}
                    let v = -rs.norm(s) * self.get(rs.negative(b), s);
                    exact_div(v, rs.norm(a))
                } else {
                    // γ = -ξ positive; N_{a,b} = (γ,γ)/(b,b) N_{γ,a}
                    let g = rs.negative(s);
                    exact_div(rs.norm(g) * self.get(g, a), rs.norm(b))
                }
            }
        }
    }
}

fn exact_div(num: i64, den: i64) -> i64 {
    assert_eq!(num % den, 0, "non-integral structure constant {num}/{den}");
    num / den
}

impl ChevalleyConstants {
    pub fn compute(rs: &RootSystem) -> Self {
        let n_pos = rs.num_positive();
        let mut b = Builder {
            rs,
            pos: BTreeMap::new(),
        };
        for xi in 0..n_pos {
            let mut special: Vec<(usize, usize)> = Vec::new();
            for a in 0..xi {
                if let Some(bb) = rs.difference(xi, a) {
                    if rs.is_positive(bb) && a < bb {
                        special.push((a, bb));
                    }
                }
            }
            let Some(&(a0, b0)) = special.first() else {
                continue;
            };
            let n0 = rs.string_down(a0, b0) + 1;
            b.pos.insert((a0, b0), n0);
            for &(a, bb) in &special[1..] {
                let mut acc = Rational64::from_integer(0);
                let (na0, nb0) = (rs.negative(a0), rs.negative(b0));
                if let Some(d) = rs.difference(bb, a0) {
                    let t = b.get(bb, na0) * b.get(a, nb0);
                    acc += Rational64::new(t, rs.norm(d));
                }
                if let Some(d) = rs.difference(a, a0) {
                    let t = b.get(na0, a) * b.get(bb, nb0);
                    acc += Rational64::new(t, rs.norm(d));
                }
                let v = acc * Rational64::new(rs.norm(xi), n0);
                assert!(v.is_integer(), "non-integral structure constant");
                b.pos.insert((a, bb), v.to_integer());
            }
        }
        let n = rs.num_roots();
        let mut table = vec![0i8; n * n];
        for x in 0..n {
            for y in 0..n {
                if rs.sum(x, y).is_some() {
                    table[x * n + y] = b.get(x, y) as i8;
                }
            }
        }
        ChevalleyConstants { n_roots: n, table }
    }

    /// `N_{a,b}`; zero when `α+β` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.n_roots + b] as i64
    }

    /// Checks antisymmetry, `N_{-α,-β} = -N_{α,β}` and `|N_{α,β}| = p+1`.
    pub fn verify(&self, rs: &RootSystem) -> Result<()> {
        if self.n_roots != rs.num_roots() {
            return Err(Error::DimensionMismatch("constant table size".into()));
        }
        for a in 0..self.n_roots {
            for b in 0..self.n_roots {
                let n = self.get(a, b);
                match rs.sum(a, b) {
                    None if n != 0 => {
                        return Err(Error::Parse(format!(
                            "N({a},{b}) set but α+β is not a root"
                        )))
                    }
                    None => {}
                    Some(_) => {
                        let p = rs.string_down(a, b);
                        if n.abs() != p + 1 {
                            return Err(Error::Parse(format!(
                                "|N({a},{b})| = {} but p+1 = {}",
                                n.abs(),
                                p + 1
                            )));
                        }
                        if self.get(b, a) != -n {
                            return Err(Error::NotAntisymmetric(a, b));
                        }
                        if self.get(rs.negative(a), rs.negative(b)) != -n {
                            return Err(Error::Parse(format!("N(-α,-β) ≠ -N(α,β) at ({a},{b})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn key(rs: &RootSystem, a: usize, b: usize) -> String {
        let join = |v: &[i64]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", join(rs.root(a)), join(rs.root(b)))
    }

    pub fn to_cache(&self, rs: &RootSystem) -> CacheFile {
        let mut constants = BTreeMap::new();
        for a in 0..self.n_roots {
            for b in 0..self.n_roots {
                let n = self.get(a, b);
                if n != 0 {
                    constants.insert(Self::key(rs, a, b), n);
                }
            }
        }
        CacheFile {
            convention_version: CONVENTION_VERSION,
            root_type: rs.root_type(),
            rank: rs.rank(),
            constants,
        }
    }

    pub fn from_cache(rs: &RootSystem, file: &CacheFile) -> Result<Self> {
        if file.convention_version != CONVENTION_VERSION {
            return Err(Error::Parse(format!(
                "cache convention version {} (expected {CONVENTION_VERSION})",
                file.convention_version
            )));
        }
        if file.root_type != rs.root_type() || file.rank != rs.rank() {
            return Err(Error::Parse("cache belongs to another root system".into()));
        }
        let n = rs.num_roots();
        let mut table = vec![0i8; n * n];
        let parse = |s: &str| -> Result<usize> {
            let coords = s
                .split(',')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad root '{s}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            rs.index_of(&coords)
                .ok_or_else(|| Error::Parse(format!("'{s}' is not a root")))
        };
        for (k, v) in &file.constants {
            let (l, r) = k
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("bad key '{k}'")))?;
            let (a, b) = (parse(l)?, parse(r)?);
            table[a * n + b] =
                i8::try_from(*v).map_err(|_| Error::Parse(format!("constant {v} out of range")))?;
        }
        let c = ChevalleyConstants { n_roots: n, table };
        c.verify(rs)?;
        Ok(c)
    }

    /// Load from the cache directory or compute and store. Only E7 and E8 are cached.
    pub fn load_or_compute(rs: &RootSystem) -> Self {
        let cacheable = rs.root_type() == RootType::E && rs.rank() >= 7;
        let path = cache_dir().map(|d| cache_path(&d, rs));
        if let (true, Some(path)) = (cacheable, path.as_ref()) {
            if let Ok(c) = read_cache(path, rs) {
                return c;
            }
        }
        let c = Self::compute(rs);
        if let (true, Some(path)) = (cacheable, path) {
            let _ = write_cache(&path, rs, &c);
        }
        c
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub convention_version: u32,
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub rank: usize,
    pub constants: BTreeMap<String, i64>,
}

/// `GRADUS_CACHE_DIR`, else `$XDG_CACHE_HOME/gradus`, else `~/.cache/gradus`.
pub fn cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("GRADUS_CACHE_DIR") {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("gradus"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("gradus"))
}

pub fn cache_path(dir: &Path, rs: &RootSystem) -> PathBuf {
    dir.join(format!(
        "chevalley-{}-v{CONVENTION_VERSION}.json",
        rs.label()
    ))
}

pub fn read_cache(path: &Path, rs: &RootSystem) -> Result<ChevalleyConstants> {
    let text = std::fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&text)?;
    ChevalleyConstants::from_cache(rs, &file)
}

pub fn write_cache(path: &Path, rs: &RootSystem, c: &ChevalleyConstants) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let text = serde_json::to_string(&c.to_cache(rs))?;
    // Write then rename so a concurrent reader never sees a partial file.
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::all_types_up_to;

    #[test]
    fn a2_and_b2_magnitudes() {
        let a2 = RootSystem::new(RootType::A, 2).unwrap();
        let c = ChevalleyConstants::compute(&a2);
        assert_eq!(c.get(a2.simple(0), a2.simple(1)).abs(), 1);
        let b2 = RootSystem::new(RootType::B, 2).unwrap();
        let c = ChevalleyConstants::compute(&b2);
        let a12 = b2.index_of(&[1, 1]).unwrap();
        assert_eq!(c.get(b2.simple(1), a12).abs(), 2);
    }

    #[test]
    fn all_tables_verify() {
        for (ty, n) in all_types_up_to(8) {
            let rs = RootSystem::new(ty, n).unwrap();
            let c = ChevalleyConstants::compute(&rs);
            c.verify(&rs).unwrap_or_else(|e| panic!("{ty}{n}: {e}"));
        }
    }

    #[test]
    fn deterministic_and_cache_round_trip() {
        let rs = RootSystem::new(RootType::F, 4).unwrap();
        let c1 = ChevalleyConstants::compute(&rs);
        let c2 = ChevalleyConstants::compute(&rs);
        assert_eq!(c1, c2);
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), &rs);
        write_cache(&path, &rs, &c1).unwrap();
        assert_eq!(read_cache(&path, &rs).unwrap(), c1);
    }

    #[test]
    fn corrupted_cache_is_rejected() {
        let rs = RootSystem::new(RootType::G, 2).unwrap();
        let mut file = ChevalleyConstants::compute(&rs).to_cache(&rs);
        let key = file.constants.keys().next().unwrap().clone();
        *file.constants.get_mut(&key).unwrap() *= 2;
        assert!(ChevalleyConstants::from_cache(&rs, &file).is_err());
        file.convention_version += 1;
        assert!(ChevalleyConstants::from_cache(&rs, &file).is_err());
    }
}
