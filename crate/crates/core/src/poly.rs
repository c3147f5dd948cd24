//! Dense polynomial arithmetic over GF(p), coefficients low-to-high.

use crate::gfp;

/// Degree of a coefficient vector, ignoring trailing zeros. Zero polynomial -> None.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            gfp::add(
                p,
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect()
}

pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = gfp::add(p, out[i + j], gfp::mul(p, ai, bj));
        }
    }
    out
}

/// Remainder of `a` modulo a monic divisor `m`.
pub fn rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = degree(m).expect("divisor must be nonzero");
    debug_assert_eq!(m[md], 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rd) = degree(&r) {
        if rd < md {
            break;
        }
        let scale = r[rd];
        let shift = rd - md;
        for (j, &mj) in m.iter().enumerate().take(md + 1) {
            r[shift + j] = gfp::sub(p, r[shift + j], gfp::mul(p, scale, mj));
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

/// Inverse of `a` modulo a monic irreducible `m`, by the extended Euclidean algorithm.
/// Returns None when a == 0 mod m.
pub fn inv_mod(p: u64, a: &[u64], m: &[u64]) -> Option<Vec<u64>> {
    let md = degree(m).expect("modulus must be nonzero");
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(rem(p, a, m));
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divmod(p, &r0, &r1);
        let t = sub(p, &t0, &mul(p, &q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = trim(t);
    }
    // r0 is now a nonzero constant gcd; scale t0 by its inverse.
    debug_assert_eq!(degree(&r0), Some(0));
    let scale = gfp::inv(p, r0[0]);
    let mut out: Vec<u64> = t0.iter().map(|&c| gfp::mul(p, c, scale)).collect();
    out.truncate(md);
    out.resize(md, 0);
    Some(out)
}

fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            gfp::sub(
                p,
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect()
}

fn divmod(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let bd = degree(b).expect("division by zero polynomial");
    let lead_inv = gfp::inv(p, b[bd]);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(bd) + 1];
    while let Some(rd) = degree(&r) {
        if rd < bd {
            break;
        }
        let scale = gfp::mul(p, r[rd], lead_inv);
        let shift = rd - bd;
        q[shift] = scale;
        for j in 0..=bd {
            r[shift + j] = gfp::sub(p, r[shift + j], gfp::mul(p, scale, b[j]));
        }
    }
    (trim(q), trim(r))
}

/// True when the monic polynomial `m` has no monic factor of degree 1..=deg(m)/2,
/// checked by exhaustive trial division.
pub fn is_irreducible(p: u64, m: &[u64]) -> std::result::Result<(), usize> {
    let d = degree(m).expect("zero polynomial");
    for k in 1..=d / 2 {
        // All monic candidates of degree k, enumerated by base-p counting of the
        // k low coefficients.
        let count = p.checked_pow(k as u32).expect("candidate space overflow");
        for code in 0..count {
            let mut cand = vec![0u64; k + 1];
            let mut c = code;
            for slot in cand.iter_mut().take(k) {
                *slot = c % p;
                c /= p;
            }
            cand[k] = 1;
            if degree(&rem(p, m, &cand)).is_none() {
                return Err(k);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rem_reduces_against_monic() {
        // x^2 mod x^2+x+1 = -(x+1) = x+1 over GF(2)
        assert_eq!(rem(2, &[0, 0, 1], &[1, 1, 1]), vec![1, 1]);
        // alpha^4 mod alpha^4+alpha+1 over GF(2) = alpha+1
        assert_eq!(rem(2, &[0, 0, 0, 0, 1], &[1, 1, 0, 0, 1]), vec![1, 1, 0, 0]);
    }

    #[test]
    fn inv_mod_roundtrip() {
        let m = [1u64, 1, 1]; // x^2+x+1 over GF(2)
        let a = [0u64, 1]; // x
        let ainv = inv_mod(2, &a, &m).unwrap();
        assert_eq!(ainv, vec![1, 1]); // x+1
        let prod = rem(2, &mul(2, &a, &ainv), &m);
        assert_eq!(prod, vec![1, 0]);
        assert!(inv_mod(2, &[0, 0], &m).is_none());
    }

    #[test]
    fn irreducibility_by_trial_division() {
        assert!(is_irreducible(2, &[1, 1, 1]).is_ok()); // x^2+x+1
        assert_eq!(is_irreducible(2, &[1, 0, 1]), Err(1)); // x^2+1 = (x+1)^2
        assert!(is_irreducible(2, &[1, 1, 0, 0, 1]).is_ok()); // x^4+x+1
        assert_eq!(is_irreducible(2, &[1, 0, 0, 0, 1]), Err(1)); // x^4+1
        assert!(is_irreducible(3, &[1, 0, 1]).is_ok()); // x^2+1 over GF(3)
    }
}
