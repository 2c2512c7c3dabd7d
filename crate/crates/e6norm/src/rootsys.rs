//! The E6 root system: the 36 positive roots under a fixed total order,
//! special and extraspecial pairs, and the Chevalley structure constants
//! N_{r,s} with positive sign on every extraspecial pair.
//!
//! Roots live in the fundamental basis r1..r6 with the Dynkin diagram
//!
//! ```text
//! r1 - r3 - r4 - r5 - r6
//!           |
//!           r2
//! ```
//!
//! Positive roots are numbered 1..36 by increasing height, ties broken so
//! that r1 < r2 < ... < r6 among the fundamental roots (first nonzero
//! coordinate of r - s positive means r comes first). This reproduces the
//! classical tables: r14 = r2+r4+r5, r31 = r2+r3+2r4+2r5+r6, and
//! r36 = r1+2r2+2r3+3r4+2r5+r6 the highest root.

use crate::mat::Mat6;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;

pub type Coords = [i64; 6];

/// Cartan matrix of E6, symmetric in the simply-laced normalization.
pub const CARTAN: [[i64; 6]; 6] = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
];

/// A signed root: +k or -k for the k-th positive root, k in 1..=36.
pub type SignedRoot = i32;

#[derive(Clone, Debug, Serialize)]
pub struct Root {
    pub index: u8,
    pub coords: Coords,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

pub fn height(c: &Coords) -> i64 {
    c.iter().sum()
}

/// Pairing <u, v^dual> = u^T C v; every root has squared length 2 here, so
/// the coroot pairing coincides with the Cartan form.
pub fn pairing(u: &Coords, v: &Coords) -> i64 {
    let mut acc = 0;
    for i in 0..6 {
        if u[i] == 0 {
            continue;
        }
        for j in 0..6 {
            acc += u[i] * CARTAN[i][j] * v[j];
        }
    }
    acc
}

/// Total order on positive roots: by height, then by the first nonzero
/// coordinate of r - s (positive puts r first). The orientation of the
/// tie-break is pinned by the published extraspecial-pair tables.
pub fn root_order_cmp(r: &Coords, s: &Coords) -> Ordering {
    match height(r).cmp(&height(s)) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in 0..6 {
        let d = r[i] - s[i];
        if d > 0 {
            return Ordering::Less;
        }
        if d < 0 {
            return Ordering::Greater;
        }
    }
    Ordering::Equal
}

pub struct RootSystem {
    pub positive: Vec<Root>, // 36 roots; positive[k-1] has index k
    index_of: HashMap<Coords, u8>,
    reflections: Vec<Mat6>, // 36 reflection matrices
    /// cartan_pairings[k-1][i] = <r_k, r_{i+1}^dual>
    pub cartan_pairings: Vec<[i64; 6]>,
}

impl RootSystem {
    /// Construct the root system by closing the fundamental roots under
    /// addition and sorting by the fixed total order.
    pub fn build_e6() -> RootSystem {
        let mut coords: Vec<Coords> = Vec::new();
        for i in 0..6 {
            let mut c = [0i64; 6];
            c[i] = 1;
            coords.push(c);
        }
        let mut frontier = coords.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for i in 0..6 {
                    // s + r_i is a root iff the r_i-string through s extends up:
                    // p - <s, r_i> >= 1 with p = 1 iff s - r_i is a root
                    let mut fund = [0i64; 6];
                    fund[i] = 1;
                    let mut down = *s;
                    down[i] -= 1;
                    let p = i64::from(coords.contains(&down) || down == [0; 6]);
                    let pair = pairing(s, &fund);
                    if p - pair >= 1 {
                        let mut up = *s;
                        up[i] += 1;
                        if !coords.contains(&up) && !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            coords.extend(next.iter().cloned());
            frontier = next;
        }
        coords.sort_by(root_order_cmp);
        assert_eq!(coords.len(), 36, "E6 has 36 positive roots");

        let positive: Vec<Root> = coords
            .iter()
            .enumerate()
            .map(|(k, &c)| Root {
                index: (k + 1) as u8,
                coords: c,
            })
            .collect();
        let index_of: HashMap<Coords, u8> = positive.iter().map(|r| (r.coords, r.index)).collect();
        let cartan_pairings: Vec<[i64; 6]> = positive
            .iter()
            .map(|r| {
                let mut row = [0i64; 6];
                for i in 0..6 {
                    let mut fund = [0i64; 6];
                    fund[i] = 1;
                    row[i] = pairing(&r.coords, &fund);
                }
                row
            })
            .collect();
        let reflections = positive
            .iter()
            .map(|r| {
                let mut m = Mat6::zero();
                for j in 0..6 {
                    // column j: r_j - <r_j, t^dual> t
                    let mut fund = [0i64; 6];
                    fund[j] = 1;
                    let p = pairing(&fund, &r.coords);
                    for i in 0..6 {
                        m.0[i][j] = fund[i] - p * r.coords[i];
                    }
                }
                m
            })
            .collect();
        RootSystem {
            positive,
            index_of,
            reflections,
            cartan_pairings,
        }
    }

    pub fn coords(&self, index: u8) -> &Coords {
        &self.positive[index as usize - 1].coords
    }

    /// Index of a positive root given coordinates; None if not a positive root.
    pub fn index(&self, c: &Coords) -> Option<u8> {
        self.index_of.get(c).copied()
    }

    /// Signed index for arbitrary coordinates (positive or negative root).
    pub fn signed_index(&self, c: &Coords) -> Option<SignedRoot> {
        if let Some(k) = self.index_of.get(c) {
            return Some(*k as SignedRoot);
        }
        let neg: Coords = std::array::from_fn(|i| -c[i]);
        self.index_of.get(&neg).map(|k| -(*k as SignedRoot))
    }

    pub fn signed_coords(&self, r: SignedRoot) -> Coords {
        let base = self.coords(r.unsigned_abs() as u8);
        if r > 0 {
            *base
        } else {
            std::array::from_fn(|i| -base[i])
        }
    }

    pub fn is_root_sum(&self, a: SignedRoot, b: SignedRoot) -> Option<SignedRoot> {
        let ca = self.signed_coords(a);
        let cb = self.signed_coords(b);
        let sum: Coords = std::array::from_fn(|i| ca[i] + cb[i]);
        if sum == [0; 6] {
            None
        } else {
            self.signed_index(&sum)
        }
    }

    /// Reflection matrix of the k-th positive root (columns are images of
    /// the fundamental roots, so words multiply left to right).
    pub fn reflection_matrix(&self, index: u8) -> Mat6 {
        assert!((1..=36).contains(&index), "root index out of range");
        self.reflections[index as usize - 1]
    }

    /// Matrix of a word of reflections, product taken in word order.
    pub fn word_matrix(&self, word: &[u8]) -> Mat6 {
        let mut m = Mat6::identity();
        for &i in word {
            m = m.mul(&self.reflection_matrix(i));
        }
        m
    }

    /// All special pairs (r < s positive with r + s a root), ordered by
    /// (r, s), and the extraspecial subset: for each composite root t the
    /// special pair with least first member.
    pub fn special_pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for r in 1..=36u8 {
            for s in r + 1..=36u8 {
                let sum: Coords = std::array::from_fn(|i| self.coords(r)[i] + self.coords(s)[i]);
                if self.index(&sum).is_some() {
                    out.push((r, s));
                }
            }
        }
        out
    }

    pub fn extraspecial_pairs(&self) -> Vec<(u8, u8)> {
        let mut best: HashMap<u8, (u8, u8)> = HashMap::new();
        for &(r, s) in &self.special_pairs() {
            let sum: Coords = std::array::from_fn(|i| self.coords(r)[i] + self.coords(s)[i]);
            let t = self.index(&sum).unwrap();
            let e = best.entry(t).or_insert((r, s));
            if r < e.0 {
                *e = (r, s);
            }
        }
        let mut out: Vec<(u8, u8)> = best.into_values().collect();
        out.sort();
        out
    }
}

/// Chevalley structure constants for E6. Simply laced, so every defined
/// N_{r,s} is +1 or -1; the sign is + on all extraspecial pairs and the
/// rest follow from antisymmetry and the Jacobi identity (the standard
/// determination, cf. Carter, "Simple Groups of Lie Type", 4.1-4.2).
pub struct StructureConstantTable {
    /// N for positive pairs (r, s), r + s a positive root.
    npos: HashMap<(u8, u8), i64>,
    pub extraspecial: Vec<(u8, u8, i64)>,
}

impl StructureConstantTable {
    pub fn compute(rs: &RootSystem) -> StructureConstantTable {
        let mut npos: HashMap<(u8, u8), i64> = HashMap::new();
        let extraspecial: Vec<(u8, u8)> = rs.extraspecial_pairs();
        let mut extra_of: HashMap<u8, (u8, u8)> = HashMap::new();
        for &(r, s) in &extraspecial {
            let t = rs.is_root_sum(r as SignedRoot, s as SignedRoot).unwrap();
            extra_of.insert(t as u8, (r, s));
        }

        // mixed-sign lookup against the table built so far
        fn lookup(
            rs: &RootSystem,
            npos: &HashMap<(u8, u8), i64>,
            a: SignedRoot,
            b: SignedRoot,
        ) -> i64 {
            if rs.is_root_sum(a, b).is_none() {
                return 0;
            }
            let get = |r: u8, s: u8| -> i64 {
                if r < s {
                    *npos
                        .get(&(r, s))
                        .expect("positive constant not yet computed")
                } else {
                    -*npos
                        .get(&(s, r))
                        .expect("positive constant not yet computed")
                }
            };
            match (a > 0, b > 0) {
                (true, true) => get(a as u8, b as u8),
                (false, false) => -lookup(rs, npos, -a, -b),
                (true, false) => {
                    let u = a as u8;
                    let v = (-b) as u8;
                    // N_{u,-v} via the zero-sum triple u + (-v) + (v-u) = 0
                    let diff: Coords = std::array::from_fn(|i| rs.coords(u)[i] - rs.coords(v)[i]);
                    match rs.signed_index(&diff) {
                        Some(c) if c > 0 => {
                            // u = v + c: N_{v+c, -v} = -N_{v, c}
                            -get(v, c as u8)
                        }
                        Some(c) => {
                            // v - u positive: N_{u, -v} = N_{v-u, u}
                            let c = (-c) as u8;
                            get(c, u)
                        }
                        None => unreachable!("sum checked above"),
                    }
                }
                (false, true) => -lookup(rs, npos, b, a),
            }
        }

        // fill positive pairs by increasing index of the sum root
        for t in 7..=36u8 {
            let (r1, s1) = extra_of[&t];
            npos.insert((r1, s1), 1);
            let decomps: Vec<(u8, u8)> = rs
                .special_pairs()
                .into_iter()
                .filter(|&(r, s)| {
                    rs.is_root_sum(r as SignedRoot, s as SignedRoot) == Some(t as SignedRoot)
                })
                .collect();
            for (r, s) in decomps {
                if (r, s) == (r1, s1) {
                    continue;
                }
                // Jacobi on (r1, -r, -s, s1), pairwise non-opposite:
                // N_{r,s} = N_{r1,-r} N_{r1-r,-s} + N_{-s,r1} N_{r1-s,-r}
                let mut val = 0i64;
                let a = lookup(rs, &npos, r1 as SignedRoot, -(r as SignedRoot));
                if a != 0 {
                    let r1r = rs
                        .is_root_sum(r1 as SignedRoot, -(r as SignedRoot))
                        .unwrap();
                    val += a * lookup(rs, &npos, r1r, -(s as SignedRoot));
                }
                let b = lookup(rs, &npos, -(s as SignedRoot), r1 as SignedRoot);
                if b != 0 {
                    let r1s = rs
                        .is_root_sum(r1 as SignedRoot, -(s as SignedRoot))
                        .unwrap();
                    val += b * lookup(rs, &npos, r1s, -(r as SignedRoot));
                }
                assert!(
                    val == 1 || val == -1,
                    "structure constant propagation broke"
                );
                npos.insert((r, s), val);
            }
        }

        let extraspecial = extraspecial
            .into_iter()
            .map(|(r, s)| (r, s, 1i64))
            .collect();
        StructureConstantTable { npos, extraspecial }
    }

    /// N_{a,b} for signed roots; 0 when a + b is not a root.
    pub fn n(&self, rs: &RootSystem, a: SignedRoot, b: SignedRoot) -> i64 {
        if a == -b || rs.is_root_sum(a, b).is_none() {
            return 0;
        }
        let get = |r: u8, s: u8| -> i64 {
            if r == s {
                0
            } else if r < s {
                self.npos[&(r, s)]
            } else {
                -self.npos[&(s, r)]
            }
        };
        match (a > 0, b > 0) {
            (true, true) => get(a as u8, b as u8),
            (false, false) => -self.n(rs, -a, -b),
            (true, false) => {
                let u = a as u8;
                let v = (-b) as u8;
                let diff: Coords = std::array::from_fn(|i| rs.coords(u)[i] - rs.coords(v)[i]);
                match rs.signed_index(&diff).unwrap() {
                    c if c > 0 => -get(v, c as u8),
                    c => get((-c) as u8, u),
                }
            }
            (false, true) => -self.n(rs, b, a),
        }
    }
}

/// Serializable dump of the root table and constants, for golden tests
/// and the CLI.
#[derive(Serialize)]
pub struct RootSystemDump {
    pub roots: Vec<RootEntry>,
    pub extraspecial: Vec<(u8, u8, i64)>,
    pub constants: Vec<ConstantEntry>,
}

#[derive(Serialize)]
pub struct RootEntry {
    pub index: u8,
    pub coords: Coords,
    pub height: i64,
}

#[derive(Serialize)]
pub struct ConstantEntry {
    pub r: SignedRoot,
    pub s: SignedRoot,
    pub n: i64,
}

pub fn dump(rs: &RootSystem, tab: &StructureConstantTable) -> RootSystemDump {
    let roots = rs
        .positive
        .iter()
        .map(|r| RootEntry {
            index: r.index,
            coords: r.coords,
            height: r.height(),
        })
        .collect();
    let mut constants = Vec::new();
    for a in -36i32..=36 {
        if a == 0 {
            continue;
        }
        for b in -36i32..=36 {
            if b == 0 || a == -b {
                continue;
            }
            if rs.is_root_sum(a, b).is_some() {
                constants.push(ConstantEntry {
                    r: a,
                    s: b,
                    n: tab.n(rs, a, b),
                });
            }
        }
    }
    RootSystemDump {
        roots,
        extraspecial: tab.extraspecial.clone(),
        constants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> RootSystem {
        RootSystem::build_e6()
    }

    #[test]
    fn thirty_six_positive_roots_and_named_roots() {
        let rs = rs();
        assert_eq!(rs.positive.len(), 36);
        for i in 1..=6u8 {
            assert_eq!(height(rs.coords(i)), 1);
            let mut c = [0i64; 6];
            c[i as usize - 1] = 1;
            assert_eq!(*rs.coords(i), c, "fundamental roots sit at indices 1..6");
        }
        assert_eq!(*rs.coords(14), [0, 1, 0, 1, 1, 0], "r14 = r2+r4+r5");
        assert_eq!(*rs.coords(31), [0, 1, 1, 2, 2, 1], "r31 = r2+r3+2r4+2r5+r6");
        assert_eq!(*rs.coords(36), [1, 2, 2, 3, 2, 1], "highest root");
    }

    #[test]
    fn order_is_strict_total_and_matches_indexing() {
        let rs = rs();
        assert_eq!(
            root_order_cmp(rs.coords(1), rs.coords(3)),
            Ordering::Less,
            "r1 before r3"
        );
        assert_eq!(root_order_cmp(rs.coords(1), rs.coords(36)), Ordering::Less);
        assert_eq!(root_order_cmp(rs.coords(5), rs.coords(5)), Ordering::Equal);
        for k in 1..36u8 {
            assert_eq!(
                root_order_cmp(rs.coords(k), rs.coords(k + 1)),
                Ordering::Less,
                "ordering strictly increasing along indices"
            );
        }
    }

    #[test]
    fn reflection_matrices_are_involutions_with_det_minus_one() {
        let rs = rs();
        for i in 1..=36u8 {
            let m = rs.reflection_matrix(i);
            assert_eq!(m.det(), -1);
            assert_eq!(m.mul(&m), Mat6::identity());
            // w_i(r_i) = -r_i
            let img = m.apply(rs.coords(i));
            let neg: Coords = std::array::from_fn(|k| -rs.coords(i)[k]);
            assert_eq!(img, neg);
        }
    }

    #[test]
    fn w1_w3_composite_matches_published_matrix() {
        let rs = rs();
        let a = rs.word_matrix(&[1, 3]);
        assert_eq!(a.0[0], [0, 0, -1, 1, 0, 0]);
        assert_eq!(a.0[2], [1, 0, -1, 1, 0, 0]);
        let expected = Mat6([
            [0, 0, -1, 1, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [1, 0, -1, 1, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
        ]);
        assert_eq!(a, expected);
    }

    /// The classical list of the 30 extraspecial pairs of E6, all with
    /// positive structure constant.
    pub const EXTRASPECIAL_GOLDEN: [(u8, u8); 30] = [
        (1, 3),
        (1, 9),
        (1, 13),
        (1, 15),
        (1, 19),
        (1, 21),
        (1, 24),
        (1, 25),
        (1, 28),
        (1, 31),
        (2, 4),
        (2, 9),
        (2, 10),
        (2, 15),
        (2, 16),
        (2, 21),
        (2, 35),
        (3, 4),
        (3, 10),
        (3, 16),
        (3, 26),
        (3, 30),
        (3, 33),
        (4, 5),
        (4, 11),
        (4, 19),
        (4, 25),
        (4, 34),
        (5, 6),
        (5, 28),
    ];

    #[test]
    fn extraspecial_pairs_match_golden_list() {
        let rs = rs();
        let pairs = rs.extraspecial_pairs();
        assert_eq!(pairs.len(), 30);
        assert_eq!(pairs, EXTRASPECIAL_GOLDEN.to_vec());
        assert!(pairs.contains(&(2, 4)));
        for &(r, s) in &pairs {
            assert!(
                rs.is_root_sum(r as SignedRoot, s as SignedRoot).is_some(),
                "extraspecial pairs sum to roots"
            );
        }
    }

    #[test]
    fn structure_constants_basic_relations() {
        let rs = rs();
        let tab = StructureConstantTable::compute(&rs);
        assert_eq!(tab.n(&rs, 2, 4), 1, "N(r2,r4) = +1");
        assert_eq!(tab.n(&rs, 4, 2), -1, "antisymmetry");
        for a in -36i32..=36 {
            if a == 0 {
                continue;
            }
            for b in -36i32..=36 {
                if b == 0 || b == -a {
                    continue;
                }
                let n = tab.n(&rs, a, b);
                if rs.is_root_sum(a, b).is_some() {
                    assert_eq!(n.abs(), 1);
                    assert_eq!(tab.n(&rs, b, a), -n, "antisymmetry in both orders");
                    assert_eq!(tab.n(&rs, -a, -b), -n, "negation rule");
                } else {
                    assert_eq!(n, 0);
                }
            }
        }
        for &(r, s, sign) in &tab.extraspecial {
            assert_eq!(sign, 1);
            assert_eq!(tab.n(&rs, r as SignedRoot, s as SignedRoot), 1);
        }
    }
}
