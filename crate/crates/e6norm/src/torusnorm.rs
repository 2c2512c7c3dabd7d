//! Arithmetic of maximal tori of E6(q) and their algebraic normalizers.
//!
//! A torus element (lambda_1, ..., lambda_6) is stored by the discrete
//! logs of its coordinates with respect to the canonical generator of the
//! ambient field F_{q^k}; every formula in play is monomial, so the
//! exponent lattice Z/(q^k - 1) carries the whole computation exactly.
//!
//! Conventions, pinned by the worked examples in the tests:
//! - the matrix A of a word of reflections is the product of reflection
//!   matrices in word order, columns giving images of fundamental roots;
//! - conjugation acts on coordinates through the rows of A,
//!   i.e. exps(H^n) = A * exps(H);
//! - the twisted fixed-point condition reads q * A * y = y (conjugate
//!   first, then apply the q-power Frobenius);
//! - (H n)^m has torus exponents (sum of A^j, j < m) * y and Tits part
//!   n^m, whose diagonal part is computed exactly in the Tits group.

use crate::liealg::TitsElement;
use crate::mat::Mat6;
use crate::snf::{gcd, smith_normal_form};
use crate::weyl::poly_eval;
use crate::E6;
use serde::Serialize;

/// Ambient exponent domain: F_{q^k}^* identified with Z/m, m = q^k - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub k: u32,
    pub m: i128,
}

pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q % d == 0).unwrap();
    if !crate::ff::is_prime(p) {
        return None;
    }
    let mut e = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Some((p, e))
    } else {
        None
    }
}

impl Ambient {
    pub fn new(q: u64, k: u32) -> Ambient {
        let (p, e) = prime_power(q).expect("q must be a prime power");
        let mut m: i128 = 1;
        for _ in 0..k {
            m = m
                .checked_mul(q as i128)
                .expect("resource cap: exponent domain overflow");
        }
        Ambient {
            p,
            e,
            q,
            k,
            m: m - 1,
        }
    }

    pub fn odd(&self) -> bool {
        self.p != 2
    }

    /// Exponent vector of a diagonal sign element prod h_i^{eps_i}:
    /// -1 = g^(m/2) for odd q; in characteristic 2 the h_i are trivial.
    pub fn h_exps(&self, eps: [u8; 6]) -> [i128; 6] {
        if !self.odd() {
            return [0; 6];
        }
        let half = self.m / 2;
        std::array::from_fn(|i| if eps[i] % 2 == 1 { half } else { 0 })
    }

    /// Exponent of a fixed cube root of unity, if the ambient level has one.
    pub fn cube_root_exp(&self) -> Option<i128> {
        (self.m % 3 == 0).then_some(self.m / 3)
    }

    pub fn reduce(&self, x: i128) -> i128 {
        x.rem_euclid(self.m)
    }
}

/// Element of the algebraic torus in generator-exponent coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TorusElement {
    pub exps: [i128; 6],
}

impl TorusElement {
    pub fn identity() -> TorusElement {
        TorusElement { exps: [0; 6] }
    }

    pub fn new(amb: &Ambient, exps: [i128; 6]) -> TorusElement {
        TorusElement {
            exps: exps.map(|x| x.rem_euclid(amb.m)),
        }
    }

    pub fn mul(&self, amb: &Ambient, rhs: &TorusElement) -> TorusElement {
        TorusElement {
            exps: std::array::from_fn(|i| amb.reduce(self.exps[i] + rhs.exps[i])),
        }
    }

    pub fn inv(&self, amb: &Ambient) -> TorusElement {
        TorusElement {
            exps: std::array::from_fn(|i| amb.reduce(-self.exps[i])),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exps == [0; 6]
    }

    /// Multiplicative order inside the ambient torus.
    pub fn order(&self, amb: &Ambient) -> i128 {
        let mut ord: i128 = 1;
        for &x in &self.exps {
            let o = amb.m / gcd(x, amb.m);
            ord = ord / gcd(ord, o) * o;
        }
        ord
    }
}

/// Apply a Weyl matrix to exponent coordinates: conjugation by any lift.
pub fn act(a: &Mat6, h: &TorusElement, amb: &Ambient) -> TorusElement {
    let mut out = [0i128; 6];
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        for j in 0..6 {
            acc += a.0[i][j] as i128 * h.exps[j];
        }
        *o = amb.reduce(acc);
    }
    TorusElement { exps: out }
}

/// The q-power Frobenius on coordinates.
pub fn frobenius_sigma(h: &TorusElement, amb: &Ambient) -> TorusElement {
    TorusElement {
        exps: std::array::from_fn(|i| amb.reduce(h.exps[i] * amb.q as i128)),
    }
}

/// Twisting data for one torus class at one q: the representative word,
/// its Weyl element and matrix, and its word lift in the Tits group.
pub struct TwistData {
    pub class: u8,
    pub q: u64,
    pub amb: Ambient,
    pub word: Vec<u8>,
    pub w: u32,
    pub a: Mat6,
    pub n: TitsElement,
}

/// Least k <= 48 such that every given order divides q^k - 1.
pub fn minimal_k(q: u64, orders: &[i128]) -> u32 {
    'k: for k in 1..=48u32 {
        for &o in orders {
            if o <= 1 {
                continue;
            }
            // q^k mod o without overflow
            let mut acc: i128 = 1;
            for _ in 0..k {
                acc = acc * (q as i128 % o) % o;
            }
            if (acc - 1).rem_euclid(o) != 0 {
                continue 'k;
            }
        }
        return k;
    }
    panic!("resource cap: no ambient level below k = 48 supports orders {orders:?}");
}

impl TwistData {
    /// Build the twist for a class, choosing the least ambient level that
    /// contains the full finite torus plus any extra roots of unity the
    /// caller needs.
    pub fn new(ctx: &E6, class: u8, q: u64, extra_orders: &[i128]) -> TwistData {
        let data = &ctx.weyl.classes[class as usize - 1];
        let word = data.rep_word.clone();
        let a = ctx.roots.word_matrix(&word);
        let w = ctx.weyl.id_of(&a);
        let n = ctx.tits.n_word(&word);
        let factors = torus_invariant_factors(&a, q);
        let mut orders: Vec<i128> = factors;
        orders.extend_from_slice(extra_orders);
        let k = minimal_k(q, &orders);
        TwistData {
            class,
            q,
            amb: Ambient::new(q, k),
            word,
            w,
            a,
            n,
        }
    }

    /// The twisted Lang map on exponents: H -> H^{sigma n} H^{-1},
    /// i.e. (q A - I) y.
    pub fn lang(&self, h: &TorusElement) -> TorusElement {
        let conj = act(&self.a, h, &self.amb);
        let twisted = frobenius_sigma(&conj, &self.amb);
        twisted.mul(&self.amb, &h.inv(&self.amb))
    }

    /// Membership in the finite torus T = {H : H^{sigma n} = H}.
    pub fn torus_membership(&self, h: &TorusElement) -> bool {
        self.lang(h).is_identity()
    }
}

/// Normal form of a normalizer element: torus part times the canonical
/// lift of the Weyl part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizerElement {
    pub h: TorusElement,
    pub x: u32,
}

impl NormalizerElement {
    pub fn identity() -> NormalizerElement {
        NormalizerElement {
            h: TorusElement::identity(),
            x: 0,
        }
    }

    /// Normal form of a torus element times an arbitrary Tits element.
    pub fn from_tits(ctx: &E6, amb: &Ambient, h: &TorusElement, t: &TitsElement) -> Self {
        let x = ctx.tits.weyl_image(&ctx.weyl, t);
        let eps = ctx.tits.h_part(&ctx.weyl, t);
        let delta = TorusElement::new(amb, amb.h_exps(eps));
        NormalizerElement {
            h: h.mul(amb, &delta),
            x,
        }
    }

    pub fn multiply(
        ctx: &E6,
        amb: &Ambient,
        lhs: &NormalizerElement,
        rhs: &NormalizerElement,
    ) -> NormalizerElement {
        let a = ctx.weyl.mat(lhs.x);
        let moved = act(&a, &rhs.h, amb);
        let eps = ctx.tits.cocycle(&ctx.weyl, lhs.x, rhs.x);
        let coc = TorusElement::new(amb, amb.h_exps(eps));
        NormalizerElement {
            h: lhs.h.mul(amb, &moved).mul(amb, &coc),
            x: ctx.weyl.mul(lhs.x, rhs.x),
        }
    }

    pub fn inverse(ctx: &E6, amb: &Ambient, a: &NormalizerElement) -> NormalizerElement {
        let xi = ctx.weyl.inv(a.x);
        let eps = ctx.tits.cocycle(&ctx.weyl, a.x, xi);
        let coc = TorusElement::new(amb, amb.h_exps(eps));
        let inner = a.h.inv(amb).mul(amb, &coc.inv(amb));
        let h = act(&ctx.weyl.mat(xi), &inner, amb);
        let out = NormalizerElement { h, x: xi };
        debug_assert!(Self::multiply(ctx, amb, a, &out) == Self::identity());
        out
    }

    pub fn pow(ctx: &E6, amb: &Ambient, a: &NormalizerElement, e: u32) -> NormalizerElement {
        let mut acc = NormalizerElement::identity();
        for _ in 0..e {
            acc = Self::multiply(ctx, amb, &acc, a);
        }
        acc
    }

    /// Order, using that the Weyl part must die first.
    pub fn order(ctx: &E6, amb: &Ambient, a: &NormalizerElement) -> i128 {
        let d = ctx.weyl.order(a.x);
        let p = Self::pow(ctx, amb, a, d);
        assert_eq!(p.x, ctx.weyl.identity());
        d as i128 * p.h.order(amb)
    }
}

/// (H n)^m for an explicit Tits word n: torus exponents via the
/// exponent-sum matrix, Tits part n^m.
pub fn twisted_power(
    amb: &Ambient,
    h: &TorusElement,
    a: &Mat6,
    n: &TitsElement,
    m: u32,
) -> (TorusElement, TitsElement) {
    let b = a.power_sum(m);
    (act(&b, h, amb), n.pow(m))
}

/// Order of an element H n with n an explicit Tits word over the ambient
/// torus.
pub fn lift_order(ctx: &E6, amb: &Ambient, h: &TorusElement, a: &Mat6, n: &TitsElement) -> i128 {
    let d = a.order();
    let (torus, tits) = twisted_power(amb, h, a, n, d);
    let eps = ctx
        .tits
        .h_part_solve(&tits)
        .expect("the d-th power of a lift lies over the identity");
    let rest = torus.mul(amb, &TorusElement::new(amb, amb.h_exps(eps)));
    d as i128 * rest.order(amb)
}

/// Membership of H u in the algebraic normalizer twisted by n, by the
/// fixed-point criterion H = H^{sigma n} [n, u]. The Weyl image of u must
/// centralize the twisting element.
pub fn normalizer_membership(
    ctx: &E6,
    twist: &TwistData,
    h: &TorusElement,
    u: &TitsElement,
) -> Result<bool, String> {
    let wu = ctx.tits.weyl_image(&ctx.weyl, u);
    let ww = twist.w;
    if ctx.weyl.mul(wu, ww) != ctx.weyl.mul(ww, wu) {
        return Err("Weyl image does not centralize the twisting element".into());
    }
    // [n, u] = n u n^-1 u^-1 lies in the diagonal subgroup
    let c = twist.n.comm(u);
    let eps = ctx
        .tits
        .h_part_solve(&c)
        .map_err(|e| format!("commutator not diagonal: {e}"))?;
    let corr = TorusElement::new(&twist.amb, twist.amb.h_exps(eps));
    Ok(twist.lang(h) == corr.inv(&twist.amb))
}

/// |T| = |det(qA - I)| for the class representative.
pub fn torus_order(ctx: &E6, class: u8, q: u64) -> i128 {
    let data = &ctx.weyl.classes[class as usize - 1];
    let a = ctx.roots.word_matrix(&data.rep_word);
    let det = det_q_a_minus_i(&a, q).abs();
    let poly = poly_eval(&data.order_poly, q as i128).abs();
    assert_eq!(det, poly, "determinant disagrees with the order polynomial");
    det
}

fn det_q_a_minus_i(a: &Mat6, q: u64) -> i128 {
    let mut m = [[0i128; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = q as i128 * a.0[i][j] as i128 - i128::from(i == j);
        }
    }
    crate::mat::det6_i128(m)
}

/// Nontrivial invariant factors of T = Y / (qA - I) Y.
pub fn torus_invariant_factors(a: &Mat6, q: u64) -> Vec<i128> {
    let rows: Vec<Vec<i128>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| q as i128 * a.0[i][j] as i128 - i128::from(i == j))
                .collect()
        })
        .collect();
    crate::snf::invariant_factors(&rows)
        .into_iter()
        .filter(|&d| d > 1)
        .collect()
}

#[derive(Serialize)]
pub struct TorusStructure {
    pub class: u8,
    pub q: u64,
    pub order: i128,
    pub invariant_factors: Vec<i128>,
    pub ambient_k: u32,
    #[serde(skip)]
    pub generators: Vec<TorusElement>,
}

/// Structure of the finite torus: invariant factors from the Smith normal
/// form of (qA - I), with explicit generators realized in the ambient
/// exponent domain.
pub fn torus_structure(ctx: &E6, class: u8, q: u64) -> TorusStructure {
    let data = &ctx.weyl.classes[class as usize - 1];
    let a = ctx.roots.word_matrix(&data.rep_word);
    let rows: Vec<Vec<i128>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| q as i128 * a.0[i][j] as i128 - i128::from(i == j))
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&rows);
    let factors: Vec<i128> = (0..6).map(|i| snf.d[i][i]).filter(|&d| d > 1).collect();
    let order = torus_order(ctx, class, q);
    assert_eq!(factors.iter().product::<i128>(), order);

    let twist = TwistData::new(ctx, class, q, &[]);
    let amb = twist.amb;
    // solutions of (qA - I) y = 0 mod m: y = V z with d_i z_i = 0, so the
    // columns of V scaled by m/d_i generate T
    let mut generators = Vec::new();
    for i in 0..6 {
        let d = snf.d[i][i];
        if d <= 1 {
            continue;
        }
        assert_eq!(amb.m % d, 0, "ambient level must contain the torus");
        let scale = amb.m / d;
        let col: [i128; 6] = std::array::from_fn(|r| amb.reduce(snf.v[r][i] * scale));
        let g = TorusElement { exps: col };
        debug_assert!(twist.torus_membership(&g));
        debug_assert_eq!(g.order(&amb), d);
        generators.push(g);
    }
    TorusStructure {
        class,
        q,
        order,
        invariant_factors: factors,
        ambient_k: amb.k,
        generators,
    }
}

/// Enumerate the finite torus from its structure generators (for
/// brute-force oracles; caller is responsible for sizing).
pub fn enumerate_torus(amb: &Ambient, st: &TorusStructure) -> Vec<TorusElement> {
    let mut out = vec![TorusElement::identity()];
    for (g, &d) in st.generators.iter().zip(st.invariant_factors.iter()) {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for e in &out {
            let mut cur = *e;
            for _ in 0..d {
                next.push(cur);
                cur = cur.mul(amb, g);
            }
        }
        out = next;
    }
    out
}

/// Invariant-factor normalization of a finite abelian group given as a
/// product of cyclic orders.
pub fn abelian_invariants(orders: &[i128]) -> Vec<i128> {
    let mut v: Vec<i128> = orders.iter().copied().filter(|&x| x > 1).collect();
    loop {
        let mut changed = false;
        for i in 0..v.len() {
            for j in 0..v.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (v[i], v[j]);
                if a % b != 0 && b % a != 0 {
                    let g = gcd(a, b);
                    v[i] = g;
                    v[j] = a / g * b;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    v.retain(|&x| x > 1);
    v.sort();
    v
}

/// The order-3 central element z = h_{r1}(xi) h_{r3}(xi^2) h_{r5}(xi)
/// h_{r6}(xi^2), or None in characteristic 3 where it collapses.
pub fn center_element(amb: &Ambient) -> Option<TorusElement> {
    if amb.p == 3 {
        return None;
    }
    let e = amb.cube_root_exp()?;
    Some(TorusElement::new(amb, [e, 0, 2 * e, 0, e, 2 * e]))
}

/// A torus element is central iff it is fixed by all fundamental
/// reflections.
pub fn is_central(ctx: &E6, amb: &Ambient, z: &TorusElement) -> bool {
    (1..=6u8).all(|i| act(&ctx.roots.reflection_matrix(i), z, amb) == *z)
}

/// Equality in the adjoint group: H1 H2^-1 lies in the center.
pub fn adjoint_equal(amb: &Ambient, h1: &TorusElement, h2: &TorusElement) -> bool {
    let d = h1.mul(amb, &h2.inv(amb));
    if d.is_identity() {
        return true;
    }
    match center_element(amb) {
        Some(z) => d == z || d == z.mul(amb, &z),
        None => false,
    }
}
