//! Dense polynomials over a prime field, coefficients stored low to high.

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Remainder of `f` modulo a nonzero `g`.
pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = degree(g).expect("division by the zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr] * lead_inv % p;
        let shift = dr - dg;
        for (i, &gi) in g.iter().enumerate().take(dg + 1) {
            r[shift + i] = (r[shift + i] + p - c * gi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Product of `a` and `b` reduced modulo the monic `f`; result has length `deg f`.
pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (d..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for j in 0..d {
            prod[deg - d + j] = (prod[deg - d + j] + p - c * f[j] % p) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

/// Base-`p` digits of `index`, least significant first, `len` digits.
pub(crate) fn digits(mut index: usize, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index as u64) % p);
        index /= p as usize;
    }
    out
}

pub(crate) fn from_digits(d: &[u64], p: u64) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Renders a polynomial in `var`, highest degree first, e.g. `x^2+2x+1`.
pub(crate) fn render(f: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let term = match i {
            0 => coeff,
            1 => format!("{coeff}{var}"),
            _ => format!("{coeff}{var}^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Monic `f` of degree at least one is irreducible when no monic polynomial
/// of degree `1..=deg f / 2` divides it.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for dg in 1..=d / 2 {
        let count = (p as usize).pow(dg as u32);
        for low in 0..count {
            let mut g = digits(low, p, dg);
            g.push(1);
            if degree(&rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_forms() {
        assert_eq!(render(&[1, 1, 0, 1], "x"), "x^3+x+1");
        assert_eq!(render(&[1, 2], "x"), "2x+1");
        assert_eq!(render(&[0], "x"), "0");
        assert_eq!(render(&[0, 1], "x"), "x");
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 0, 0, 1], 2));
    }

    #[test]
    fn reduction_mod_f() {
        // x * (x+1) = x^2 + x = 1 mod x^2+x+1 over F2
        assert_eq!(mul_mod(&[0, 1], &[1, 1], &[1, 1, 1], 2), vec![1, 0]);
    }
}
