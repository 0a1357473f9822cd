use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{boundary_matrix_with_budget, rank_mod_p, smith_normal_form};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rings::is_prime;
use crate::DEFAULT_FACE_BUDGET;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Coefficients {
    #[default]
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Q` and `F<p>` (also `GF(p)`) for a prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => return Ok(Coefficients::Integers),
            "Q" | "q" => return Ok(Coefficients::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F').or_else(|| t.strip_prefix('f')));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) if is_prime(p) && p < 1 << 63 => Ok(Coefficients::PrimeField(p)),
            Some(p) => Err(Error::invalid(format!("{p} is not a usable prime"))),
            None => Err(Error::invalid(format!("unknown coefficients {s:?}; use Z, Q or Fp"))),
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Serializes big integers as JSON numbers when they fit in `u64`.
pub(crate) fn serialize_biguints<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match u64::try_from(d) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

/// One homology group `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tm` with `t1 | ... | tm`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "serialize_biguints")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of a complex in every dimension from `-1` (reduced) or `0` up to
/// its dimension. Dimensions outside the map are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub coefficients: Coefficients,
    pub groups: BTreeMap<isize, HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, n: isize) -> HomologyGroup {
        self.groups.get(&n).cloned().unwrap_or_default()
    }

    pub fn rank(&self, n: isize) -> usize {
        self.groups.get(&n).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, n: isize) -> &[BigUint] {
        self.groups.get(&n).map_or(&[], |g| g.torsion.as_slice())
    }

    /// Nonzero ranks by dimension.
    pub fn ranks(&self) -> BTreeMap<isize, usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|(&n, g)| (n, g.rank))
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }

    /// Whether every group vanishes.
    pub fn is_trivial(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_zero)
    }

    /// `Σ (-1)^n rank_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(&n, g)| if n.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Entry<'a> {
            dim: isize,
            rank: usize,
            #[serde(serialize_with = "serialize_biguints")]
            torsion: &'a [BigUint],
        }
        let groups: Vec<Entry> = self
            .groups
            .iter()
            .map(|(&dim, g)| Entry {
                dim,
                rank: g.rank,
                torsion: &g.torsion,
            })
            .collect();
        let mut st = s.serialize_struct("HomologyProfile", 3)?;
        st.serialize_field("reduced", &self.reduced)?;
        st.serialize_field("coefficients", &self.coefficients)?;
        st.serialize_field("groups", &groups)?;
        st.end()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "H~" } else { "H" };
        if self.groups.is_empty() {
            return write!(f, "all {h}_n = 0");
        }
        let lines: Vec<String> = self
            .groups
            .iter()
            .map(|(n, g)| format!("{h}_{n}({}) = {g}", self.coefficients))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

pub fn homology(k: &SimplicialComplex, reduced: bool, coefficients: Coefficients) -> Result<HomologyProfile> {
    homology_with_budget(k, reduced, coefficients, DEFAULT_FACE_BUDGET)
}

/// Per dimension: `rank_n = c_n - rank ∂_n - rank ∂_{n+1}`, with torsion
/// from the invariant factors of `∂_{n+1}` over the integers. Boundary maps
/// of different dimensions are reduced in parallel.
pub fn homology_with_budget(
    k: &SimplicialComplex,
    reduced: bool,
    coefficients: Coefficients,
    budget: usize,
) -> Result<HomologyProfile> {
    let faces = k.faces_with_budget(budget)?;
    let mut profile = HomologyProfile {
        reduced,
        coefficients,
        groups: BTreeMap::new(),
    };
    let Some(top) = faces.top_dim() else {
        return Ok(profile);
    };
    let lo: isize = if reduced { -1 } else { 0 };
    if top < lo {
        return Ok(profile);
    }
    let boundaries: Vec<(usize, Vec<BigUint>)> = (lo..=top + 1)
        .into_par_iter()
        .map(|n| {
            let d = boundary_matrix_with_budget(k, n, reduced, budget)?;
            Ok(match coefficients {
                Coefficients::Integers => {
                    let s = smith_normal_form(&d);
                    let torsion = s.torsion();
                    (s.rank, torsion)
                }
                Coefficients::Rationals => (smith_normal_form(&d).rank, Vec::new()),
                Coefficients::PrimeField(p) => (rank_mod_p(&d, p), Vec::new()),
            })
        })
        .collect::<Result<_>>()?;
    for n in lo..=top {
        let i = (n - lo) as usize;
        let chains = faces.count(n);
        profile.groups.insert(
            n,
            HomologyGroup {
                rank: chains - boundaries[i].0 - boundaries[i + 1].0,
                torsion: boundaries[i + 1].1.clone(),
            },
        );
    }
    Ok(profile)
}
