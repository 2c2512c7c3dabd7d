//! Exact finite fields F_{p^d} at desk scale: verified irreducible
//! moduli, verified primitive elements, Frobenius, baby-step giant-step
//! discrete logarithms, and deterministic construction of roots of unity
//! with prescribed multiplicative properties.
//!
//! Fields are capped at 2^32 elements so that full factorization of the
//! group order and table-based discrete logs stay trivial.

use std::collections::HashMap;
use thiserror::Error;

pub const FIELD_CAP: u64 = 1 << 32;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0}^{1} exceeds the cap")]
    TooLarge(u64, u32),
    #[error("no solution of the requested order in this field")]
    NoSuchRoot,
    #[error("discrete log of zero")]
    LogOfZero,
}

/// F_{p^(e*k)} = F_{q^k} with q = p^e; polynomial arithmetic modulo a
/// verified irreducible, with a verified generator of the multiplicative
/// group.
pub struct FieldCtx {
    pub p: u64,
    pub e: u32,
    pub k: u32,
    pub d: u32,
    /// monic irreducible modulus, coefficients lowest first, length d+1
    pub modulus: Vec<u64>,
    pub generator: FieldElement,
    pub order: u64, // p^d - 1
}

/// Polynomial coordinates over the prime field, degree < d.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FieldElement(pub Vec<u64>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Factor n (n < 2^32 in practice) by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            let mut e = 0;
            while n % f == 0 {
                n /= f;
                e += 1;
            }
            out.push((f, e));
        }
        f += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn build_field(p: u64, e: u32, k: u32) -> Result<FieldCtx, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let d = e * k;
    assert!(d >= 1);
    let mut size: u64 = 1;
    for _ in 0..d {
        size = size
            .checked_mul(p)
            .filter(|&s| s <= FIELD_CAP)
            .ok_or(FieldError::TooLarge(p, d))?;
    }
    let modulus = find_irreducible(p, d);
    let order = size - 1;
    let ctx_partial = FieldCtx {
        p,
        e,
        k,
        d,
        modulus,
        generator: FieldElement(vec![0]),
        order,
    };
    let generator = find_generator(&ctx_partial);
    Ok(FieldCtx {
        generator,
        ..ctx_partial
    })
}

/// Deterministic irreducible search: sparse trinomial-like shapes first,
/// then dense polynomials in counting order.
fn find_irreducible(p: u64, d: u32) -> Vec<u64> {
    if d == 1 {
        return vec![0, 1]; // x
    }
    for c in 1..p {
        for mid_pow in 1..d {
            for b in 0..p {
                let mut f = vec![0u64; d as usize + 1];
                f[0] = c;
                f[mid_pow as usize] = b;
                f[d as usize] = 1;
                if is_irreducible(p, &f) {
                    return f;
                }
            }
        }
    }
    // dense fallback: enumerate all monic polynomials
    let mut counter = vec![0u64; d as usize];
    loop {
        let mut f = counter.clone();
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < d as usize, "no irreducible found (impossible)");
        }
    }
}

// polynomial helpers over F_p, coefficients lowest first
fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn poly_mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(p, prod, m)
}

fn poly_rem(p: u64, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while a.len() > dm {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let idx = shift + i;
                a[idx] = (a[idx] + (p - lead) * m[i] % p) % p;
            }
        }
        a.pop();
    }
    trim(a)
}

fn poly_powmod(p: u64, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut b = trim(base.to_vec());
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, &acc, &b, m);
        }
        b = poly_mulmod(p, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd(p: u64, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while b != vec![0] {
        // make b monic for the remainder step
        let lead = *b.last().unwrap();
        let inv = mod_inv(lead, p);
        let bm: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(p, a.clone(), &bm);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// f is irreducible of degree d over F_p iff x^(p^d) = x mod f and
/// gcd(x^(p^(d/l)) - x, f) = 1 for every prime l dividing d.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0u64, 1];
    let frob = |mut cur: Vec<u64>, steps: u32| -> Vec<u64> {
        for _ in 0..steps {
            cur = poly_powmod(p, &cur, p, f);
        }
        cur
    };
    let xpd = frob(x.clone(), d);
    if trim(xpd) != x {
        return false;
    }
    for (l, _) in factorize(d as u64) {
        let sub = frob(x.clone(), d / l as u32);
        let mut diff = sub;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(p, f.to_vec(), trim(diff));
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn find_generator(ctx: &FieldCtx) -> FieldElement {
    let facs = factorize(ctx.order);
    if ctx.order == 1 {
        return FieldElement(vec![1]);
    }
    let mut counter = vec![0u64; ctx.d as usize];
    loop {
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] < ctx.p {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < ctx.d as usize, "no generator found (impossible)");
        }
        let cand = FieldElement(trim(counter.clone()));
        if facs
            .iter()
            .all(|&(l, _)| !ctx.is_one(&ctx.pow(&cand, ctx.order / l)))
        {
            return cand;
        }
    }
}

impl FieldCtx {
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn size(&self) -> u64 {
        self.order + 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0])
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(vec![1])
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        trim(a.0.clone()) == vec![1]
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.0.get(i).copied().unwrap_or(0);
            let y = b.0.get(i).copied().unwrap_or(0);
            *o = (x + y) % self.p;
        }
        FieldElement(trim(out))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(trim(
            a.0.iter()
                .map(|&c| (self.p - c % self.p) % self.p)
                .collect(),
        ))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(poly_mulmod(self.p, &a.0, &b.0, &self.modulus))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        FieldElement(poly_powmod(self.p, &a.0, e, &self.modulus))
    }

    pub fn inv(&self, a: &FieldElement) -> FieldElement {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order - 1)
    }

    /// q-power Frobenius x -> x^q, the Steinberg endomorphism of the
    /// split form.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.q())
    }

    /// g^e for the canonical generator, exponent taken mod the group order.
    pub fn gen_pow(&self, e: i128) -> FieldElement {
        let m = self.order as i128;
        self.pow(&self.generator.clone(), e.rem_euclid(m) as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elt_order(&self, a: &FieldElement) -> u64 {
        assert!(!self.is_zero(a));
        let mut ord = self.order;
        for (l, e) in factorize(self.order) {
            for _ in 0..e {
                if ord % l == 0 && self.is_one(&self.pow(a, ord / l)) {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        ord
    }

    /// Baby-step giant-step discrete log base the canonical generator.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64, FieldError> {
        if self.is_zero(x) {
            return Err(FieldError::LogOfZero);
        }
        let n = self.order;
        if n == 1 {
            return Ok(0);
        }
        let m = (n as f64).sqrt().ceil() as u64 + 1;
        let mut baby: HashMap<FieldElement, u64> = HashMap::with_capacity(m as usize);
        let mut cur = self.one();
        for j in 0..m {
            baby.entry(cur.clone()).or_insert(j);
            cur = self.mul(&cur, &self.generator);
        }
        let gm_inv = self.inv(&self.pow(&self.generator, m));
        let mut gamma = x.clone();
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma) {
                return Ok((i * m + j) % n);
            }
            gamma = self.mul(&gamma, &gm_inv);
        }
        unreachable!("generator has full order");
    }

    /// All elements of the field, for brute-force oracles on tiny fields.
    pub fn all_elements(&self) -> Vec<FieldElement> {
        assert!(self.size() <= 1 << 16, "enumeration is for tiny fields");
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut counter = vec![0u64; self.d as usize];
        out.push(FieldElement(vec![0]));
        'outer: loop {
            let mut i = 0;
            loop {
                counter[i] += 1;
                if counter[i] < self.p {
                    break;
                }
                counter[i] = 0;
                i += 1;
                if i >= self.d as usize {
                    break 'outer;
                }
            }
            out.push(FieldElement(trim(counter.clone())));
        }
        out
    }
}

/// A constraint on a root of unity: exact multiplicative order and/or a
/// power landing on -1.
#[derive(Clone, Copy, Debug, Default)]
pub struct RootSpec {
    pub order: Option<u64>,
    /// x^t = -1
    pub power_neg_one: Option<u64>,
}

/// Deterministic solution as a power of the canonical generator, or an
/// error if the field has none (the caller should enlarge k).
pub fn root_with_property(ctx: &FieldCtx, spec: RootSpec) -> Result<FieldElement, FieldError> {
    let n = ctx.order;
    let exp: u64 = match (spec.order, spec.power_neg_one) {
        (Some(o), None) => {
            if o == 0 || n % o != 0 {
                return Err(FieldError::NoSuchRoot);
            }
            n / o
        }
        (ord, Some(t)) => {
            // need an element of order 2t (odd characteristic) whose t-th
            // power is the unique element of order 2
            if ctx.p == 2 {
                return Err(FieldError::NoSuchRoot);
            }
            let need = 2 * t;
            if n % need != 0 {
                return Err(FieldError::NoSuchRoot);
            }
            if let Some(o) = ord {
                if o != need {
                    return Err(FieldError::NoSuchRoot);
                }
            }
            n / need
        }
        (None, None) => 0,
    };
    let x = ctx.gen_pow(exp as i128);
    if let Some(o) = spec.order {
        debug_assert_eq!(ctx.elt_order(&x), o);
    }
    if let Some(t) = spec.power_neg_one {
        debug_assert!(ctx.is_one(&ctx.neg(&ctx.pow(&x, t))));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_has_generator_of_order_8() {
        let f = build_field(3, 1, 2).unwrap();
        assert_eq!(f.size(), 9);
        assert_eq!(f.elt_order(&f.generator.clone()), 8);
    }

    #[test]
    fn f2_builds() {
        let f = build_field(2, 1, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert!(f.is_one(&f.generator.clone()));
    }

    #[test]
    fn frobenius_fixes_exactly_the_base_subfield() {
        // F_9 over F_3 with q = 3: x^3 = x exactly on the prime field
        let f = build_field(3, 1, 2).unwrap();
        let mut fixed = 0;
        for x in f.all_elements() {
            if f.frobenius(&x) == x {
                fixed += 1;
                assert!(x.0.len() <= 1, "fixed points are constants");
            }
        }
        assert_eq!(fixed, 3);
        // and q = 9 on F_81 fixes the 9-element subfield
        let f81 = build_field(3, 2, 2).unwrap();
        let fixed81 = f81
            .all_elements()
            .into_iter()
            .filter(|x| f81.frobenius(x) == *x)
            .count();
        assert_eq!(fixed81, 9);
    }

    #[test]
    fn roots_with_properties() {
        // zeta^4 = -1 in F_9 (element of order 8)
        let f9 = build_field(3, 1, 2).unwrap();
        let z = root_with_property(
            &f9,
            RootSpec {
                order: None,
                power_neg_one: Some(4),
            },
        )
        .unwrap();
        assert!(f9.is_one(&f9.neg(&f9.pow(&z, 4))));
        // brute force agrees that such an element exists
        let brute = f9
            .all_elements()
            .into_iter()
            .filter(|x| !f9.is_zero(x) && f9.is_one(&f9.neg(&f9.pow(x, 4))))
            .count();
        assert!(brute > 0);
        // alpha^2 = -1 in F_5: brute force says alpha is 2 or 3
        let f5 = build_field(5, 1, 1).unwrap();
        let a = root_with_property(
            &f5,
            RootSpec {
                order: None,
                power_neg_one: Some(2),
            },
        )
        .unwrap();
        assert!(a.0 == vec![2] || a.0 == vec![3]);
        // x of order 1 is 1
        let one = root_with_property(
            &f5,
            RootSpec {
                order: Some(1),
                power_neg_one: None,
            },
        )
        .unwrap();
        assert!(f5.is_one(&one));
        // no square root of -1 in F_3 (3 = 3 mod 4)
        let f3 = build_field(3, 1, 1).unwrap();
        assert!(root_with_property(
            &f3,
            RootSpec {
                order: None,
                power_neg_one: Some(2)
            }
        )
        .is_err());
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        let f = build_field(5, 1, 3).unwrap(); // F_125
        assert_eq!(f.dlog(&f.one()).unwrap(), 0);
        assert_eq!(f.dlog(&f.generator.clone()).unwrap(), 1);
        let n = f.order;
        for (a, b) in [(3u64, 17u64), (50, 99), (123, 4), (88, 88)] {
            let x = f.gen_pow(a as i128);
            let y = f.gen_pow(b as i128);
            let lhs = f.dlog(&f.mul(&x, &y)).unwrap();
            assert_eq!(lhs, (a + b) % n);
        }
    }

    #[test]
    fn irreducibility_rejects_products() {
        // x^2 - 1 = (x-1)(x+1) over F_5
        assert!(!is_irreducible(5, &[4, 0, 1]));
        // x^2 + 1 irreducible over F_3
        assert!(is_irreducible(3, &[1, 0, 1]));
    }
}
