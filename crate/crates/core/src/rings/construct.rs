//! Constructors for the standard ring families.

use std::collections::HashMap;

use super::poly;
use super::{FiniteRing, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_order(order: Option<u128>, cap: usize) -> Result<usize> {
    match order {
        Some(o) if o <= cap as u128 => Ok(o as usize),
        Some(o) => Err(Error::TooLarge {
            what: "ring order",
            size: o,
            limit: cap as u128,
        }),
        None => Err(Error::TooLarge {
            what: "ring order",
            size: u128::MAX,
            limit: cap as u128,
        }),
    }
}

/// The integers modulo `n`, labelled `"0".."n-1"`.
pub fn make_zmod(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::invalid(format!("Z{n}: modulus must be at least 2")));
    }
    let order = check_order(Some(n as u128), DEFAULT_ORDER_CAP)?;
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            add.push(((a + b) % order) as u32);
            mul.push(((a * b) % order) as u32);
        }
    }
    let labels = (0..order).map(|a| a.to_string()).collect();
    FiniteRing::from_tables(format!("Z{n}"), add, mul, 0, 1, labels)
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// `F_p`, comparing coefficients from `x^(k-1)` down to the constant term.
pub fn irreducible_polynomial(p: u64, k: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let count = check_order((p as u128).checked_pow(k as u32), DEFAULT_ORDER_CAP)?;
    for low in 0..count {
        let mut f = poly::digits(low, p, k);
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The field with `p^k` elements as `F_p[x]/(f)` for the least irreducible `f`.
pub fn make_galois_field(p: u64, k: usize) -> Result<FiniteRing> {
    let f = irreducible_polynomial(p, k)?;
    let ring = make_univariate_quotient(p, &f)?;
    Ok(ring.with_name(format!("GF({p}^{k})")))
}

/// Alias of [`make_galois_field`] taking the prime power as separate parts.
pub fn galois_field(p: u64, k: usize) -> Result<FiniteRing> {
    make_galois_field(p, k)
}

/// `F_p[x]/(f)` for monic `f` given by coefficients, constant term first.
/// Element `i` has the base-`p` digits of `i` as its coefficients.
pub fn make_univariate_quotient(p: u64, f: &[u64]) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let f: Vec<u64> = poly::trim(f.iter().map(|c| c % p).collect());
    let d = match poly::degree(&f) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("modulus polynomial must have degree at least 1")),
    };
    if f[d] != 1 {
        return Err(Error::invalid("modulus polynomial must be monic"));
    }
    let order = check_order((p as u128).checked_pow(d as u32), DEFAULT_ORDER_CAP)?;
    let elems: Vec<Vec<u64>> = (0..order).map(|i| poly::digits(i, p, d)).collect();
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for a in &elems {
        for b in &elems {
            let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            add.push(poly::from_digits(&s, p) as u32);
            mul.push(poly::from_digits(&poly::mul_mod(a, b, &f, p), p) as u32);
        }
    }
    let labels = elems.iter().map(|e| poly::render(e, "x")).collect();
    let name = format!("F{p}[x]/({})", poly::render(&f, "x").replace('+', " + "));
    FiniteRing::from_tables(name, add, mul, 0, 1, labels)
}

pub(crate) fn default_var_names(m: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if m <= NAMES.len() {
        NAMES[..m].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    }
}

pub(crate) fn render_monomial(e: &[u32], vars: &[String]) -> String {
    let mut s = String::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{k}")),
        }
    }
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

/// `F_p[x_1..x_m]/(monomials)` for a cofinite monomial ideal. The basis is the
/// set of standard monomials (those not divisible by any generator), ordered
/// by total degree and then by descending exponent vector.
pub fn make_monomial_quotient(p: u64, m: usize, gens: &[Vec<u32>]) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::invalid("need at least one variable"));
    }
    if gens.iter().any(|g| g.len() != m) {
        return Err(Error::invalid("generator exponent vectors must have one entry per variable"));
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Err(Error::invalid("the ideal contains 1; the quotient is the zero ring"));
    }
    let mut bounds = vec![u32::MAX; m];
    for g in gens {
        let support: Vec<usize> = (0..m).filter(|&i| g[i] > 0).collect();
        if let [i] = support[..] {
            bounds[i] = bounds[i].min(g[i]);
        }
    }
    if let Some(i) = bounds.iter().position(|&b| b == u32::MAX) {
        return Err(Error::invalid(format!(
            "quotient is infinite: no generator is a pure power of variable {}",
            i + 1
        )));
    }
    let divides = |g: &[u32], e: &[u32]| g.iter().zip(e).all(|(a, b)| a <= b);
    let in_ideal = |e: &[u32]| gens.iter().any(|g| divides(g, e));

    let box_size = bounds.iter().try_fold(1u128, |acc, &b| acc.checked_mul(b as u128));
    if box_size.is_none_or(|s| s > 1 << 20) {
        return Err(Error::TooLarge {
            what: "monomial basis search space",
            size: box_size.unwrap_or(u128::MAX),
            limit: 1 << 20,
        });
    }
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut e = vec![0u32; m];
    'outer: loop {
        if !in_ideal(&e) {
            basis.push(e.clone());
        }
        for i in 0..m {
            e[i] += 1;
            if e[i] < bounds[i] {
                continue 'outer;
            }
            e[i] = 0;
        }
        break;
    }
    basis.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let dim = basis.len();
    let order = check_order((p as u128).checked_pow(dim as u32), DEFAULT_ORDER_CAP)?;

    let position: HashMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let mut basis_product = vec![None; dim * dim];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !in_ideal(&s) {
                basis_product[i * dim + j] = Some(position[s.as_slice()]);
            }
        }
    }

    let elems: Vec<Vec<u64>> = (0..order).map(|i| poly::digits(i, p, dim)).collect();
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    let mut acc = vec![0u64; dim];
    for a in &elems {
        for b in &elems {
            let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            add.push(poly::from_digits(&s, p) as u32);
            acc.iter_mut().for_each(|c| *c = 0);
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    if let Some(k) = basis_product[i * dim + j] {
                        acc[k] = (acc[k] + x * y) % p;
                    }
                }
            }
            mul.push(poly::from_digits(&acc, p) as u32);
        }
    }

    let vars = default_var_names(m);
    let labels = elems
        .iter()
        .map(|coeffs| {
            let terms: Vec<String> = coeffs
                .iter()
                .zip(&basis)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, mono)| {
                    let mono = render_monomial(mono, &vars);
                    match (c, mono.as_str()) {
                        (_, "1") => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}{mono}"),
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();
    let one = basis.iter().position(|b| b.iter().all(|&x| x == 0)).expect("1 is standard");
    let one_index = poly::from_digits(
        &(0..dim).map(|i| u64::from(i == one)).collect::<Vec<_>>(),
        p,
    );
    let gens_text: Vec<String> = gens.iter().map(|g| render_monomial(g, &vars)).collect();
    let name = format!("F{p}[{}]/({})", vars.join(","), gens_text.join(", "));
    FiniteRing::from_tables(name, add, mul, 0, one_index, labels)
}

/// Direct product with componentwise tables, capped at [`DEFAULT_ORDER_CAP`].
pub fn product(factors: &[FiniteRing]) -> Result<FiniteRing> {
    product_with_cap(factors, DEFAULT_ORDER_CAP)
}

/// Direct product; element index is mixed-radix with the first factor most
/// significant. A single factor is returned unchanged.
pub fn product_with_cap(factors: &[FiniteRing], cap: usize) -> Result<FiniteRing> {
    match factors {
        [] => Err(Error::invalid("product of an empty list of rings")),
        [single] => Ok(single.clone()),
        _ => {
            let order = check_order(
                factors
                    .iter()
                    .try_fold(1u128, |acc, r| acc.checked_mul(r.order() as u128)),
                cap,
            )?;
            let coords: Vec<Vec<usize>> = (0..order)
                .map(|mut i| {
                    let mut c = vec![0; factors.len()];
                    for (slot, r) in c.iter_mut().zip(factors).rev() {
                        *slot = i % r.order();
                        i /= r.order();
                    }
                    c
                })
                .collect();
            let encode = |c: &[usize]| -> u32 {
                c.iter()
                    .zip(factors)
                    .fold(0usize, |acc, (&x, r)| acc * r.order() + x) as u32
            };
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            let mut buf = vec![0; factors.len()];
            for a in &coords {
                for b in &coords {
                    for (k, r) in factors.iter().enumerate() {
                        buf[k] = r.add(a[k], b[k]);
                    }
                    add.push(encode(&buf));
                    for (k, r) in factors.iter().enumerate() {
                        buf[k] = r.mul(a[k], b[k]);
                    }
                    mul.push(encode(&buf));
                }
            }
            let labels = coords
                .iter()
                .map(|c| {
                    let parts: Vec<&str> =
                        c.iter().zip(factors).map(|(&x, r)| r.label(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            let zero: Vec<usize> = factors.iter().map(|r| r.zero()).collect();
            let one: Vec<usize> = factors.iter().map(|r| r.one()).collect();
            let name = factors.iter().map(|r| r.name()).collect::<Vec<_>>().join(" x ");
            FiniteRing::from_tables(
                name,
                add,
                mul,
                encode(&zero) as usize,
                encode(&one) as usize,
                labels,
            )
        }
    }
}
