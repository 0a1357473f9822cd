use std::fmt;

use serde::Serialize;

use super::construct::{default_var_names, render_monomial};
use super::{poly, FiniteRing};
use crate::error::{Error, Result};

/// Parse tree of a ring description such as `Z4 x GF(3^2) x F2[x]/(x^3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RingSpec {
    ZMod(u64),
    GaloisField { p: u64, k: usize },
    /// Coefficients of the monic modulus, constant term first.
    UnivariateQuotient { p: u64, coeffs: Vec<u64> },
    MonomialQuotient { p: u64, vars: usize, gens: Vec<Vec<u32>> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    /// Constructs the ring the spec describes.
    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingSpec::ZMod(n) => super::make_zmod(*n),
            RingSpec::GaloisField { p, k } => super::make_galois_field(*p, *k),
            RingSpec::UnivariateQuotient { p, coeffs } => super::make_univariate_quotient(*p, coeffs),
            RingSpec::MonomialQuotient { p, vars, gens } => super::make_monomial_quotient(*p, *vars, gens),
            RingSpec::Product(terms) => {
                if terms.is_empty() {
                    return Err(Error::invalid("empty product"));
                }
                let factors = terms.iter().map(RingSpec::build).collect::<Result<Vec<_>>>()?;
                let ring = super::product(&factors)?;
                Ok(ring.with_name(self.to_string()))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZMod(n) => write!(f, "Z{n}"),
            RingSpec::GaloisField { p, k } => write!(f, "GF({p}^{k})"),
            RingSpec::UnivariateQuotient { p, coeffs } => {
                write!(f, "F{p}[x]/({})", poly::render(coeffs, "x").replace('+', " + "))
            }
            RingSpec::MonomialQuotient { p, vars, gens } => {
                let names = default_var_names(*vars);
                let gens: Vec<String> = gens.iter().map(|g| render_monomial(g, &names)).collect();
                write!(f, "F{p}[{}]/({})", names.join(","), gens.join(", "))
            }
            RingSpec::Product(terms) => {
                let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}
