use super::{Elem, FiniteRing};
use crate::error::Result;

/// Splits a ring into local factors `eR`, one per primitive idempotent `e`.
///
/// Factors are ordered by `(order, is_field, unit_count, labels)`; the last
/// factor is the one the homology recursion peels off. A local ring comes
/// back as a single-element list holding a copy of itself.
pub fn decompose_local(ring: &FiniteRing) -> Result<Vec<FiniteRing>> {
    let idempotents: Vec<Elem> = ring
        .idempotents()
        .into_iter()
        .filter(|&e| e != ring.zero())
        .collect();
    if idempotents.len() == 1 {
        return Ok(vec![ring.clone()]);
    }
    // e is primitive when the only idempotents below it (f = fe) are 0 and e.
    let primitive: Vec<Elem> = idempotents
        .iter()
        .copied()
        .filter(|&e| {
            idempotents
                .iter()
                .all(|&f| f == e || ring.mul(f, e) != f)
        })
        .collect();

    let mut factors = Vec::with_capacity(primitive.len());
    for e in primitive {
        let mut elems: Vec<Elem> = (0..ring.order()).map(|x| ring.mul(e, x)).collect();
        elems.sort_unstable();
        elems.dedup();
        let name = format!("{}[e={}]", ring.name(), ring.label(e));
        factors.push(ring.restrict(&elems, e, name)?);
    }
    factors.sort_by_cached_key(|r| (r.order(), r.is_field(), r.units().len(), r.labels().to_vec()));
    Ok(factors)
}
