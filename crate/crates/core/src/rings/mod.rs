//! Finite commutative rings stored as explicit addition and multiplication
//! tables over element indices `0..order`.
//!
//! Every ring in this crate is small enough (order at most
//! [`DEFAULT_ORDER_CAP`] by default) that all structural questions can be
//! answered by scanning the tables: units, zero divisors, idempotents and
//! powers of the maximal ideal.

mod construct;
mod decompose;
pub(crate) mod poly;
mod spec;

pub use construct::{
    galois_field, irreducible_polynomial, is_prime, make_galois_field, make_monomial_quotient,
    make_univariate_quotient, make_zmod, product, product_with_cap,
};
pub use decompose::decompose_local;
pub use spec::RingSpec;

use crate::error::{Error, Result};

/// Largest ring order the constructors will build.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Element index inside a [`FiniteRing`].
pub type Elem = usize;

/// A finite commutative unital ring given by its operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
}

/// Data of a local ring: its maximal ideal and the last nonzero power of it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LocalProfile {
    pub maximal_ideal: Vec<Elem>,
    /// Least `v` with `m^v = 0`.
    pub nilpotency_index: usize,
    pub unit_count: usize,
    /// `m^(v-1)`; for a field this is `m^0`, the whole ring.
    pub socle_layer: Vec<Elem>,
    pub is_field: bool,
}

impl FiniteRing {
    /// Builds a ring from raw tables. Only shapes, index ranges and the two
    /// identities are checked here; see [`FiniteRing::check_axioms`].
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: Elem,
        one: Elem,
        labels: Vec<String>,
    ) -> Result<Self> {
        let order = labels.len();
        if order < 2 {
            return Err(Error::invalid("a ring needs at least two elements"));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::invalid("operation tables must be order x order"));
        }
        if add.iter().chain(&mul).any(|&x| x as usize >= order) {
            return Err(Error::invalid("table entry out of range"));
        }
        if zero >= order || one >= order || zero == one {
            return Err(Error::invalid("zero and one must be distinct elements"));
        }
        let ring = FiniteRing {
            name: name.into(),
            order,
            add,
            mul,
            zero,
            one,
            labels,
        };
        for a in 0..order {
            if ring.add(a, zero) != a || ring.mul(a, one) != a {
                return Err(Error::invalid("identity elements do not act as identities"));
            }
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    /// Index of the element with the given label.
    pub fn element(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    pub fn neg(&self, a: Elem) -> Elem {
        (0..self.order)
            .find(|&b| self.add(a, b) == self.zero)
            .expect("additive inverse exists in a ring")
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Exhaustively checks commutativity, associativity, distributivity and
    /// additive inverses when `order <= exhaustive_cap`; above the cap the
    /// triple checks run on a deterministic sample.
    pub fn check_axioms(&self, exhaustive_cap: usize) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return Err(Error::invalid(format!("{} has no additive inverse", self.labels[a])));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::invalid("operation tables are not commutative"));
                }
            }
        }
        let check = |a: Elem, b: Elem, c: Elem| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::invalid("addition is not associative"));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::invalid("multiplication is not associative"));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(Error::invalid("multiplication does not distribute"));
            }
            Ok(())
        };
        if n <= exhaustive_cap {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // Linear congruential walk over triples; deterministic so failures reproduce.
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..200_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let x = (state >> 16) as usize;
                check(x % n, (x / n) % n, (x / (n * n)) % n)?;
            }
        }
        Ok(())
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        let row = &self.mul[a * self.order..(a + 1) * self.order];
        row.iter().any(|&x| x as usize == self.one)
    }

    /// Units `{x : xy = 1 for some y}` in index order.
    pub fn units(&self) -> Vec<Elem> {
        (0..self.order).filter(|&a| self.is_unit(a)).collect()
    }

    /// Nonzero zero divisors (equivalently: nonzero non-units) in index order.
    pub fn zero_divisors(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&a| a != self.zero && !self.is_unit(a))
            .collect()
    }

    pub fn is_field(&self) -> bool {
        (0..self.order).all(|a| a == self.zero || self.is_unit(a))
    }

    /// Characteristic: additive order of one.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut c = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            c += 1;
        }
        c
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        (0..self.order).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Returns the local profile when the non-units form an ideal.
    pub fn is_local(&self) -> Option<LocalProfile> {
        let non_units: Vec<Elem> = (0..self.order).filter(|&a| !self.is_unit(a)).collect();
        let mut member = vec![false; self.order];
        for &a in &non_units {
            member[a] = true;
        }
        for &a in &non_units {
            for &b in &non_units {
                if !member[self.add(a, b)] {
                    return None;
                }
            }
        }
        let unit_count = self.order - non_units.len();
        if non_units.len() == 1 {
            return Some(LocalProfile {
                maximal_ideal: non_units,
                nilpotency_index: 1,
                unit_count,
                socle_layer: (0..self.order).collect(),
                is_field: true,
            });
        }
        let mut previous = non_units.clone();
        let mut power = non_units.clone();
        let mut v = 1;
        while power.len() > 1 {
            previous = power;
            power = self.ideal_product(&previous, &non_units);
            v += 1;
        }
        Some(LocalProfile {
            maximal_ideal: non_units,
            nilpotency_index: v,
            unit_count,
            socle_layer: previous,
            is_field: false,
        })
    }

    /// Additive closure of `{ab : a in I, b in J}`, sorted.
    pub fn ideal_product(&self, i: &[Elem], j: &[Elem]) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut seen = vec![false; self.order];
        for &a in i {
            for &b in j {
                let p = self.mul(a, b);
                if !seen[p] {
                    seen[p] = true;
                    gens.push(p);
                }
            }
        }
        self.additive_span(&gens)
    }

    /// Additive subgroup generated by `gens`, sorted.
    pub fn additive_span(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[self.zero] = true;
        let mut queue = vec![self.zero];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order).filter(|&a| member[a]).collect()
    }

    /// Restriction of the tables to a subset closed under both operations,
    /// with `identity` as the new one. Used for the factors `eR`.
    pub(crate) fn restrict(&self, elements: &[Elem], identity: Elem, name: String) -> Result<Self> {
        let n = elements.len();
        let mut position = vec![usize::MAX; self.order];
        for (i, &a) in elements.iter().enumerate() {
            position[a] = i;
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                let (s, p) = (position[self.add(a, b)], position[self.mul(a, b)]);
                if s == usize::MAX || p == usize::MAX {
                    return Err(Error::invalid("subset is not closed under the ring operations"));
                }
                add.push(s as u32);
                mul.push(p as u32);
            }
        }
        let labels = elements.iter().map(|&a| self.labels[a].clone()).collect();
        FiniteRing::from_tables(name, add, mul, position[self.zero], position[identity], labels)
    }
}

impl std::fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_of_small_rings() {
        assert_eq!(make_zmod(6).unwrap().units(), vec![1, 5]);
        assert_eq!(make_zmod(4).unwrap().units(), vec![1, 3]);
        let gf9 = make_galois_field(3, 2).unwrap();
        assert_eq!(gf9.units().len(), 8);
        assert!(!gf9.units().contains(&gf9.zero()));
    }

    #[test]
    fn local_profile_of_z8() {
        let p = make_zmod(8).unwrap().is_local().unwrap();
        assert_eq!(p.maximal_ideal, vec![0, 2, 4, 6]);
        assert_eq!(p.nilpotency_index, 3);
        assert_eq!(p.unit_count, 4);
        assert_eq!(p.socle_layer, vec![0, 4]);
        assert!(!p.is_field);
    }

    #[test]
    fn z6_is_not_local() {
        assert!(make_zmod(6).unwrap().is_local().is_none());
    }

    #[test]
    fn z4_profile() {
        let p = make_zmod(4).unwrap().is_local().unwrap();
        assert_eq!(p.maximal_ideal, vec![0, 2]);
        assert_eq!(p.nilpotency_index, 2);
    }

    #[test]
    fn field_profile() {
        let p = make_galois_field(2, 2).unwrap().is_local().unwrap();
        assert!(p.is_field);
        assert_eq!(p.nilpotency_index, 1);
        assert_eq!(p.maximal_ideal, vec![0]);
    }

    #[test]
    fn units_and_zero_divisors_partition_nonzero() {
        for ring in [
            make_zmod(12).unwrap(),
            make_monomial_quotient(2, 2, &[vec![2, 0], vec![0, 2]]).unwrap(),
            product(&[make_zmod(4).unwrap(), make_galois_field(2, 2).unwrap()]).unwrap(),
        ] {
            let mut all: Vec<Elem> = ring.units();
            all.extend(ring.zero_divisors());
            all.sort_unstable();
            let expected: Vec<Elem> = (0..ring.order()).filter(|&a| a != ring.zero()).collect();
            assert_eq!(all, expected, "{}", ring);
        }
    }

    #[test]
    fn unit_count_is_order_minus_ideal() {
        for n in [4, 8, 9, 16, 25, 27, 49] {
            let ring = make_zmod(n).unwrap();
            let p = ring.is_local().unwrap();
            assert_eq!(p.unit_count, ring.order() - p.maximal_ideal.len());
        }
    }

    #[test]
    fn socle_annihilates_maximal_ideal() {
        let rings = [
            make_zmod(27).unwrap(),
            make_univariate_quotient(2, &[0, 0, 0, 0, 1]).unwrap(),
            make_monomial_quotient(3, 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap(),
        ];
        for ring in rings {
            let p = ring.is_local().unwrap();
            assert!(p.socle_layer.contains(&ring.zero()));
            for &s in &p.socle_layer {
                for &m in &p.maximal_ideal {
                    assert_eq!(ring.mul(s, m), ring.zero());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["0".to_string(), "1".to_string()];
        assert!(FiniteRing::from_tables("bad", vec![0; 4], vec![0; 4], 0, 1, labels).is_err());
    }
}
