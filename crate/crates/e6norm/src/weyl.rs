//! The Weyl group W(E6) as explicit 6x6 integer matrices: full
//! enumeration (51840 elements with canonical reduced words), the 25
//! conjugacy classes with their maximal-torus data, centralizers, and
//! verified finite presentations of subgroups.

use crate::mat::Mat6;
use crate::rootsys::RootSystem;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};

pub const WEYL_ORDER: usize = 51840;

type Key = [i8; 36];

fn pack(m: &Mat6) -> Key {
    let mut k = [0i8; 36];
    for i in 0..6 {
        for j in 0..6 {
            let v = m.0[i][j];
            debug_assert!((-4..=4).contains(&v));
            k[i * 6 + j] = v as i8;
        }
    }
    k
}

fn unpack(k: &Key) -> Mat6 {
    let mut m = Mat6::zero();
    for i in 0..6 {
        for j in 0..6 {
            m.0[i][j] = k[i * 6 + j] as i64;
        }
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SplitKind {
    Plus,
    Minus,
    /// Splits exactly when q is not 3 mod 4 (among odd q).
    PlusUnless3Mod4,
}

#[derive(Clone, Serialize)]
pub struct ClassData {
    pub index: u8,
    /// Representative as a word of reflections, by positive-root index.
    pub rep_word: Vec<u8>,
    #[serde(skip)]
    pub rep: u32,
    pub order: u32,
    pub centralizer_order: u64,
    pub label: &'static str,
    /// det(qA - I) as a polynomial in q, lowest degree first, positive leading
    /// coefficient; equals the order of the torus T_w(q).
    pub order_poly: Vec<i128>,
    /// The cyclic factors of T as printed in the classical table, each a
    /// polynomial in q. Factors are only claimed up to abelian-group
    /// isomorphism of the product.
    pub cyclic_factors: Vec<Vec<i128>>,
    pub splits: SplitKind,
}

pub struct WeylGroup {
    pub gens: [Mat6; 6],
    elems: Vec<Key>,
    index: HashMap<Key, u32>,
    words: Vec<Vec<u8>>,
    class_of: Vec<u8>,
    /// (parent element, conjugating fundamental generator) along the
    /// conjugation orbit from the class representative.
    conj_tree: Vec<(u32, u8)>,
    pub classes: Vec<ClassData>,
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem) -> WeylGroup {
        let gens: [Mat6; 6] = std::array::from_fn(|i| rs.reflection_matrix(i as u8 + 1));
        let id = Mat6::identity();
        let mut elems = vec![pack(&id)];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index = HashMap::with_capacity(WEYL_ORDER * 2);
        index.insert(pack(&id), 0u32);
        // breadth-first with generators tried in ascending order yields the
        // lexicographically least reduced word for every element
        let mut head = 0usize;
        while head < elems.len() {
            let m = unpack(&elems[head]);
            for g in 0..6u8 {
                let next = m.mul(&gens[g as usize]);
                let key = pack(&next);
                if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                    slot.insert(elems.len() as u32);
                    let mut w = words[head].clone();
                    w.push(g + 1);
                    words.push(w);
                    elems.push(key);
                }
            }
            head += 1;
        }
        assert_eq!(elems.len(), WEYL_ORDER, "W(E6) has order 2^7 * 3^4 * 5");

        let mut wg = WeylGroup {
            gens,
            elems,
            index,
            words,
            class_of: vec![0; WEYL_ORDER],
            conj_tree: vec![(0, 0); WEYL_ORDER],
            classes: Vec::new(),
        };
        wg.classes = wg.build_classes(rs);
        wg
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mat(&self, e: u32) -> Mat6 {
        unpack(&self.elems[e as usize])
    }

    pub fn id_of(&self, m: &Mat6) -> u32 {
        self.index[&pack(m)]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Canonical (lexicographically least reduced) word in fundamental
    /// reflections.
    pub fn word(&self, e: u32) -> &[u8] {
        &self.words[e as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.id_of(&self.mat(a).mul(&self.mat(b)))
    }

    pub fn inv(&self, a: u32) -> u32 {
        // fundamental reflections are involutions, so reverse the word
        let mut m = Mat6::identity();
        for &g in self.words[a as usize].iter().rev() {
            m = m.mul(&self.gens[g as usize - 1]);
        }
        let r = self.id_of(&m);
        debug_assert_eq!(self.mul(a, r), 0);
        r
    }

    pub fn order(&self, e: u32) -> u32 {
        self.mat(e).order()
    }

    pub fn longest_word_length(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap()
    }

    fn build_classes(&mut self, rs: &RootSystem) -> Vec<ClassData> {
        let specs = class_specs();
        let mut classes = Vec::with_capacity(25);
        for (i, spec) in specs.iter().enumerate() {
            let rep_mat = rs.word_matrix(&spec.word);
            let rep = self.id_of(&rep_mat);
            let idx = (i + 1) as u8;
            // conjugation orbit, breadth-first
            assert_eq!(
                self.class_of[rep as usize], 0,
                "representatives must be new"
            );
            self.class_of[rep as usize] = idx;
            self.conj_tree[rep as usize] = (rep, 0);
            let mut queue = VecDeque::from([rep]);
            let mut size = 0u64;
            while let Some(e) = queue.pop_front() {
                size += 1;
                let m = self.mat(e);
                for g in 0..6u8 {
                    let gm = self.gens[g as usize];
                    let conj = gm.mul(&m).mul(&gm);
                    let ci = self.id_of(&conj);
                    if self.class_of[ci as usize] == 0 {
                        self.class_of[ci as usize] = idx;
                        self.conj_tree[ci as usize] = (e, g + 1);
                        queue.push_back(ci);
                    }
                }
            }
            let cent_order = WEYL_ORDER as u64 / size;
            assert_eq!(
                cent_order, spec.cent,
                "centralizer order mismatch for class {idx}"
            );
            let order = rep_mat.order();
            assert_eq!(order, spec.order, "element order mismatch for class {idx}");

            // torus order polynomial from the characteristic polynomial:
            // det(qA - I) = sum_k c_k q^(6-k), normalized to positive lead
            let cp = rep_mat.charpoly();
            let mut poly: Vec<i128> = (0..=6).map(|j| cp[6 - j]).collect();
            if poly[6] < 0 {
                for c in poly.iter_mut() {
                    *c = -*c;
                }
            }
            classes.push(ClassData {
                index: idx,
                rep_word: spec.word.clone(),
                rep,
                order,
                centralizer_order: cent_order,
                label: spec.label,
                order_poly: poly,
                cyclic_factors: spec.factors.clone(),
                splits: spec.splits,
            });
        }
        assert!(
            self.class_of.iter().all(|&c| c != 0),
            "the 25 classes must cover W"
        );
        classes
    }

    /// Class index (1..25) plus an explicit conjugator y with
    /// w = y * rep * y^-1.
    pub fn classify(&self, e: u32) -> (u8, u32) {
        let class = self.class_of[e as usize];
        let rep = self.classes[class as usize - 1].rep;
        // walk the conjugation tree back to the representative
        let mut y = self.identity();
        let mut cur = e;
        while cur != rep {
            let (parent, g) = self.conj_tree[cur as usize];
            // cur = g * parent * g, so parent = g * cur * g
            let gi = self.id_of(&self.gens[g as usize - 1]);
            y = self.mul(gi, y);
            cur = parent;
        }
        // now identity = y-chain maps rep to e via e = y^-1 rep y; invert
        let y = self.inv(y);
        debug_assert_eq!(
            self.mat(e),
            self.mat(y).mul(&self.mat(rep)).mul(&self.mat(self.inv(y))),
        );
        (class, y)
    }

    pub fn centralizer(&self, e: u32) -> Vec<u32> {
        let m = self.mat(e);
        (0..self.len() as u32)
            .filter(|&x| {
                let xm = self.mat(x);
                xm.mul(&m) == m.mul(&xm)
            })
            .collect()
    }

    /// Greedy generating set for a subgroup given as an element list.
    pub fn generating_set(&self, elems: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut span: Vec<u32> = vec![self.identity()];
        let mut in_span: std::collections::HashSet<u32> = span.iter().copied().collect();
        for &x in elems {
            if in_span.contains(&x) {
                continue;
            }
            gens.push(x);
            // close the span under the new generator set
            let mut queue: VecDeque<u32> = span.iter().copied().collect();
            while let Some(a) = queue.pop_front() {
                for &g in &gens {
                    let b = self.mul(a, g);
                    if in_span.insert(b) {
                        span.push(b);
                        queue.push_back(b);
                    }
                }
            }
            if span.len() == elems.len() {
                break;
            }
        }
        gens
    }

    /// Subgroup closure of a generating set.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut span = vec![self.identity()];
        let mut seen: std::collections::HashSet<u32> = span.iter().copied().collect();
        let mut queue: VecDeque<u32> = VecDeque::from([self.identity()]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    span.push(b);
                    queue.push_back(b);
                }
            }
        }
        span
    }

    pub fn order_stats(&self, elems: &[u32]) -> BTreeMap<u32, usize> {
        let mut stats = BTreeMap::new();
        for &e in elems {
            *stats.entry(self.order(e)).or_insert(0) += 1;
        }
        stats
    }
}

struct ClassSpec {
    word: Vec<u8>,
    order: u32,
    cent: u64,
    label: &'static str,
    factors: Vec<Vec<i128>>,
    splits: SplitKind,
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(p: &[i128], q: i128) -> i128 {
    p.iter().rev().fold(0i128, |acc, &c| acc * q + c)
}

fn class_specs() -> Vec<ClassSpec> {
    // shorthands for the factor polynomials, lowest degree first
    let qm1 = vec![-1i128, 1]; // q - 1
    let qp1 = vec![1i128, 1]; // q + 1
    let q2m1 = vec![-1i128, 0, 1];
    let q2p1 = vec![1i128, 0, 1];
    let q2pqp1 = vec![1i128, 1, 1];
    let q2mqp1 = vec![1i128, -1, 1];
    let q3m1 = vec![-1i128, 0, 0, 1];
    let q3p1 = vec![1i128, 0, 0, 1];
    let q4m1 = vec![-1i128, 0, 0, 0, 1];
    let q4p1 = vec![1i128, 0, 0, 0, 1];
    let q4mq2p1 = vec![1i128, 0, -1, 0, 1];
    let q4pq2p1 = vec![1i128, 0, 1, 0, 1];
    let q5m1 = vec![-1i128, 0, 0, 0, 0, 1];
    let phi6sum = vec![1i128, 1, 1, 1, 1, 1]; // q^5+...+1
    let q6q31 = vec![1i128, 0, 0, 1, 0, 0, 1]; // q^6+q^3+1

    let s = |w: &[u8]| w.to_vec();
    vec![
        ClassSpec {
            word: s(&[]),
            order: 1,
            cent: 51840,
            label: "O5(3):Z2",
            factors: vec![qm1.clone(); 6],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1]),
            order: 2,
            cent: 1440,
            label: "S2 x S6",
            factors: vec![
                qm1.clone(),
                qm1.clone(),
                qm1.clone(),
                qm1.clone(),
                q2m1.clone(),
            ],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 2]),
            order: 2,
            cent: 192,
            label: "D8 x S4",
            factors: vec![qm1.clone(), qm1.clone(), q2m1.clone(), q2m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[3, 1]),
            order: 3,
            cent: 216,
            label: "Z3 x ((S3 x S3):Z2)",
            factors: vec![qm1.clone(), qm1.clone(), qm1.clone(), q3m1.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[2, 3, 5]),
            order: 2,
            cent: 96,
            label: "Z2 x Z2 x S4",
            factors: vec![q2m1.clone(), q2m1.clone(), q2m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 3, 5]),
            order: 6,
            cent: 36,
            label: "Z6 x S3",
            factors: vec![qm1.clone(), q2m1.clone(), q3m1.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 3, 4]),
            order: 4,
            cent: 32,
            label: "Z4 x D8",
            factors: vec![qm1.clone(), qm1.clone(), q4m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 36]),
            order: 2,
            cent: 1152,
            label: "Z2:(((A4 x A4):Z2):Z2)",
            factors: vec![qp1.clone(), qp1.clone(), q2m1.clone(), q2m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 2, 3, 5]),
            order: 6,
            cent: 24,
            label: "Z3 x D8",
            factors: vec![q2m1.clone(), poly_mul(&qp1, &q3m1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 5, 3, 6]),
            order: 3,
            cent: 108,
            label: "Z3 x S3 x S3",
            factors: vec![qm1.clone(), q2pqp1.clone(), q3m1.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 3]),
            order: 4,
            cent: 16,
            label: "Z4 x Z2 x Z2",
            factors: vec![q2m1.clone(), q4m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 4, 3, 2]),
            order: 5,
            cent: 10,
            label: "Z2 x Z5",
            factors: vec![qm1.clone(), q5m1.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[3, 2, 5, 4]),
            order: 6,
            cent: 36,
            label: "Z6 x S3",
            factors: vec![q2m1.clone(), poly_mul(&qm1, &q3p1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[3, 2, 4, 14]),
            order: 4,
            cent: 96,
            label: "SL2(3):Z4",
            // the direct square of the cyclic group of order (q-1)(q^2+1)
            factors: vec![poly_mul(&qm1, &q2p1), poly_mul(&qm1, &q2p1)],
            splits: SplitKind::PlusUnless3Mod4,
        },
        ClassSpec {
            word: s(&[1, 5, 3, 6, 2]),
            order: 6,
            cent: 36,
            label: "Z6 x S3",
            factors: vec![q2pqp1.clone(), poly_mul(&qp1, &q3m1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 3, 36]),
            order: 4,
            cent: 96,
            label: "Z4 x S4",
            factors: vec![qp1.clone(), qp1.clone(), q4m1.clone()],
            splits: SplitKind::Minus,
        },
        ClassSpec {
            word: s(&[1, 4, 5, 3, 36]),
            order: 10,
            cent: 10,
            label: "Z10",
            factors: vec![poly_mul(&qp1, &q5m1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 3, 5]),
            order: 6,
            cent: 12,
            label: "Z6 x Z2",
            factors: vec![q2pqp1.clone(), poly_mul(&qm1, &q3p1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[2, 5, 3, 4, 6]),
            order: 8,
            cent: 8,
            label: "Z8",
            factors: vec![poly_mul(&q2m1, &q4p1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[20, 5, 4, 3, 2]),
            order: 12,
            cent: 12,
            label: "Z12",
            factors: vec![poly_mul(&qm1, &poly_mul(&q2p1, &q3p1))],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 5, 2, 3, 6, 36]),
            order: 3,
            cent: 648,
            label: "(((Z3 x Z3):Z3):Q8):Z3",
            factors: vec![q2pqp1.clone(), q2pqp1.clone(), q2pqp1.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 3, 5, 36]),
            order: 6,
            cent: 36,
            label: "Z6 x S3",
            factors: vec![qp1.clone(), phi6sum.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 6, 3, 2, 5]),
            order: 12,
            cent: 12,
            label: "Z12",
            factors: vec![poly_mul(&q2pqp1, &q4mq2p1)],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 14, 3, 2, 6]),
            order: 9,
            cent: 9,
            label: "Z9",
            factors: vec![q6q31.clone()],
            splits: SplitKind::Plus,
        },
        ClassSpec {
            word: s(&[1, 4, 14, 3, 2, 31]),
            order: 6,
            cent: 72,
            label: "Z3 x SL2(3)",
            factors: vec![q2mqp1.clone(), q4pq2p1.clone()],
            splits: SplitKind::Plus,
        },
    ]
}

// ---------------------------------------------------------------------------
// presentations and coset enumeration
// ---------------------------------------------------------------------------

/// A relator: word over generator symbols, +i for g_i, -i for g_i^-1
/// (1-based).
pub type Relator = Vec<i32>;

/// Todd-Coxeter coset enumeration over the trivial subgroup (HLT style).
/// Returns the number of cosets, i.e. the order of the presented group,
/// or None if the cap is exceeded.
pub fn coset_count(ngens: usize, relators: &[Relator], cap: usize) -> Option<usize> {
    let mut ct = CosetTable::new(ngens, cap);
    // keep scanning until a full pass over all live cosets is clean
    loop {
        let mut scan = 1u32;
        while (scan as usize) < ct.table.len() {
            if ct.find(scan) == scan {
                for rel in relators {
                    if !ct.scan_and_fill(scan, rel) {
                        return None;
                    }
                    if ct.find(scan) != scan {
                        break;
                    }
                }
                if ct.find(scan) == scan && !ct.fill_row(scan) {
                    return None;
                }
            }
            scan += 1;
        }
        // verification pass: every relator must trace and close from every
        // live coset of the by-now complete table
        let mut clean = true;
        let mut c = 1u32;
        while (c as usize) < ct.table.len() {
            if ct.find(c) == c {
                'rel: for rel in relators {
                    let mut cur = c;
                    for &sym in rel {
                        let nxt = ct.lookup(cur, CosetTable::col(sym));
                        if nxt == 0 {
                            clean = false;
                            break 'rel;
                        }
                        cur = nxt;
                    }
                    if ct.find(cur) != ct.find(c) {
                        ct.coincide(cur, c);
                        clean = false;
                    }
                }
            }
            if !clean {
                break;
            }
            c += 1;
        }
        if clean {
            break;
        }
    }
    let live = (1..ct.table.len() as u32)
        .filter(|&c| ct.find(c) == c)
        .count();
    Some(live)
}

struct CosetTable {
    width: usize,
    cap: usize,
    table: Vec<Vec<u32>>, // entry 0 = undefined; coset ids from 1
    forward: Vec<u32>,    // union-find for coincidences
    live: usize,
}

impl CosetTable {
    fn new(ngens: usize, cap: usize) -> CosetTable {
        CosetTable {
            width: 2 * ngens,
            cap,
            table: vec![vec![0; 2 * ngens], vec![0; 2 * ngens]],
            forward: vec![0, 1],
            live: 1,
        }
    }

    fn col(sym: i32) -> usize {
        let g = sym.unsigned_abs() as usize - 1;
        if sym > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.forward[a as usize] != a {
            let f = self.forward[self.forward[a as usize] as usize];
            self.forward[a as usize] = f;
            a = f;
        }
        a
    }

    fn lookup(&mut self, a: u32, c: usize) -> u32 {
        let a = self.find(a);
        let t = self.table[a as usize][c];
        if t == 0 {
            0
        } else {
            self.find(t)
        }
    }

    fn define(&mut self, a: u32, c: usize) -> Option<u32> {
        if self.live >= self.cap {
            return None;
        }
        let new = self.table.len() as u32;
        self.table.push(vec![0; self.width]);
        self.forward.push(new);
        self.live += 1;
        let a = self.find(a);
        self.table[a as usize][c] = new;
        self.table[new as usize][c ^ 1] = a;
        Some(new)
    }

    /// Record a deduction `a * c = b`, reconciling with existing entries.
    fn set(&mut self, a: u32, c: usize, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        let cur = self.lookup(a, c);
        if cur == 0 {
            self.table[a as usize][c] = b;
            let back = self.lookup(b, c ^ 1);
            if back == 0 {
                self.table[b as usize][c ^ 1] = a;
            } else if back != a {
                self.coincide(back, a);
            }
        } else if cur != b {
            self.coincide(cur, b);
        }
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.forward[drop as usize] = keep;
            self.live -= 1;
            for c in 0..self.width {
                let t = self.table[drop as usize][c];
                if t == 0 {
                    continue;
                }
                let t = self.find(t);
                let cur = self.lookup(keep, c);
                if cur == 0 {
                    self.table[keep as usize][c] = t;
                    let back = self.lookup(t, c ^ 1);
                    if back == 0 {
                        self.table[t as usize][c ^ 1] = keep;
                    } else if back != keep {
                        queue.push_back((back, keep));
                    }
                } else if cur != t {
                    queue.push_back((cur, t));
                }
            }
        }
    }

    /// HLT scan of one relator from one coset, defining cosets to fill
    /// gaps. Returns false if the coset cap was exceeded.
    fn scan_and_fill(&mut self, start: u32, rel: &[i32]) -> bool {
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = rel.len();
        loop {
            while i < j {
                let nxt = self.lookup(f, Self::col(rel[i]));
                if nxt == 0 {
                    break;
                }
                f = nxt;
                i += 1;
            }
            if i == j {
                let (ff, bb) = (self.find(f), self.find(b));
                if ff != bb {
                    self.coincide(ff, bb);
                }
                return true;
            }
            while j > i {
                let prv = self.lookup(b, Self::col(-rel[j - 1]));
                if prv == 0 {
                    break;
                }
                b = prv;
                j -= 1;
            }
            if j == i {
                let (ff, bb) = (self.find(f), self.find(b));
                if ff != bb {
                    self.coincide(ff, bb);
                }
                return true;
            }
            if j == i + 1 {
                self.set(f, Self::col(rel[i]), b);
                return true;
            }
            // fill one gap and continue scanning forward
            if self.define(f, Self::col(rel[i])).is_none() {
                return false;
            }
        }
    }

    /// Define images for any undefined generator entries of a coset.
    fn fill_row(&mut self, c: u32) -> bool {
        for col in 0..self.width {
            let c = self.find(c);
            if self.table[c as usize][col] == 0 && self.define(c, col).is_none() {
                return false;
            }
        }
        true
    }
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&-s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<i32>) -> Vec<i32> {
    w = free_reduce(&w);
    while w.len() >= 2 && w.first() == w.last().map(|x| -x).as_ref() {
        w.remove(0);
        w.pop();
        w = free_reduce(&w);
    }
    w
}

fn canonical_cyclic(w: &[i32]) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    let inv: Vec<i32> = w.iter().rev().map(|&s| -s).collect();
    for word in [w.to_vec(), inv] {
        for k in 0..word.len().max(1) {
            let rot: Vec<i32> = word
                .iter()
                .cycle()
                .skip(k)
                .take(word.len())
                .copied()
                .collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// A verified presentation of a subgroup of W on the given generators.
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Relator>,
    pub group_order: usize,
}

/// Build a presentation of the subgroup generated by `gens` from a
/// spanning tree of its Cayley graph, then thin the relator set while a
/// coset count over the remaining relators still yields the full order.
pub fn presentation(w: &WeylGroup, gens: &[u32]) -> Presentation {
    let m = gens.len();
    if m == 0 || gens.iter().all(|&g| g == w.identity()) {
        return Presentation {
            ngens: m,
            relators: Vec::new(),
            group_order: 1,
        };
    }
    // BFS over the subgroup, recording tree words in generator symbols
    let mut ids: Vec<u32> = vec![w.identity()];
    let mut pos: HashMap<u32, usize> = HashMap::from([(w.identity(), 0)]);
    let mut tree_word: Vec<Vec<i32>> = vec![Vec::new()];
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (from, gen, to)
    let mut head = 0usize;
    while head < ids.len() {
        for (gi, &g) in gens.iter().enumerate() {
            let to = w.mul(ids[head], g);
            match pos.get(&to) {
                Some(&t) => edges.push((head, gi, t)),
                None => {
                    let t = ids.len();
                    pos.insert(to, t);
                    ids.push(to);
                    let mut word = tree_word[head].clone();
                    word.push(gi as i32 + 1);
                    tree_word.push(word);
                }
            }
        }
        head += 1;
    }
    let order = ids.len();

    // non-tree edges give the relators
    let mut seen = std::collections::HashSet::new();
    let mut relators: Vec<Relator> = Vec::new();
    for (from, gi, to) in edges {
        let mut rel = tree_word[from].clone();
        rel.push(gi as i32 + 1);
        rel.extend(tree_word[to].iter().rev().map(|&s| -s));
        let rel = cyclic_reduce(rel);
        if rel.is_empty() {
            continue;
        }
        if seen.insert(canonical_cyclic(&rel)) {
            relators.push(rel);
        }
    }
    relators.sort_by(|a, b| (a.len(), &**a).cmp(&(b.len(), &**b)));

    // grow a sufficient prefix, verified by coset enumeration
    let cap = order * 12 + 2000;
    let mut kept: Vec<Relator> = Vec::new();
    let mut i = 0usize;
    let mut verified = false;
    while i < relators.len() {
        let batch = (relators.len() - i).min(kept.len().max(4));
        kept.extend_from_slice(&relators[i..i + batch]);
        i += batch;
        if coset_count(m, &kept, cap) == Some(order) {
            verified = true;
            break;
        }
    }
    if !verified {
        assert_eq!(
            coset_count(m, &kept, cap),
            Some(order),
            "spanning-tree relators must present the subgroup"
        );
    }
    // prune, longest first
    let mut idx: Vec<usize> = (0..kept.len()).collect();
    idx.sort_by_key(|&k| std::cmp::Reverse(kept[k].len()));
    for k in idx {
        let trial: Vec<Relator> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k && !kept[j].is_empty())
            .map(|(_, r)| r.clone())
            .collect();
        if !kept[k].is_empty() && coset_count(m, &trial, cap) == Some(order) {
            kept[k] = Vec::new();
        }
    }
    let relators: Vec<Relator> = kept.into_iter().filter(|r| !r.is_empty()).collect();
    assert_eq!(coset_count(m, &relators, cap), Some(order));
    Presentation {
        ngens: m,
        relators,
        group_order: order,
    }
}

/// Evaluate a relator on concrete subgroup elements; the result must be
/// the identity if the relator holds.
pub fn eval_relator(w: &WeylGroup, gens: &[u32], rel: &[i32]) -> u32 {
    let mut acc = w.identity();
    for &s in rel {
        let g = gens[s.unsigned_abs() as usize - 1];
        let g = if s > 0 { g } else { w.inv(g) };
        acc = w.mul(acc, g);
    }
    acc
}

// ---------------------------------------------------------------------------
// element-order fingerprints for the named centralizer structures
// ---------------------------------------------------------------------------

pub type OrderStats = BTreeMap<u32, usize>;

fn zn_stats(n: u32) -> OrderStats {
    let phi = |d: u32| (1..=d).filter(|&k| gcd_u32(k, d) == 1).count();
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| (d, phi(d)))
        .collect()
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn stats(entries: &[(u32, usize)]) -> OrderStats {
    entries.iter().copied().collect()
}

/// Order statistics of a direct product from those of the factors.
fn conv(a: &OrderStats, b: &OrderStats) -> OrderStats {
    let mut out = OrderStats::new();
    for (&i, &ci) in a {
        for (&j, &cj) in b {
            *out.entry(i / gcd_u32(i, j) * j).or_insert(0) += ci * cj;
        }
    }
    out
}

/// Expected element-order statistics of the centralizer, for the classes
/// whose printed structure is a direct product of named small groups.
/// Opaque extensions (classes 1, 8, 14, 21) are checked by order only.
pub fn label_fingerprint(class: u8) -> Option<OrderStats> {
    let s3 = stats(&[(1, 1), (2, 3), (3, 2)]);
    let s4 = stats(&[(1, 1), (2, 9), (3, 8), (4, 6)]);
    let s6 = stats(&[(1, 1), (2, 75), (3, 80), (4, 180), (5, 144), (6, 240)]);
    let d8 = stats(&[(1, 1), (2, 5), (4, 2)]);
    let sl23 = stats(&[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]);
    // (S3 x S3):Z2 swapping the factors: diagonal-square and swapped parts
    let s3wr2 = stats(&[(1, 1), (2, 21), (3, 8), (4, 18), (6, 24)]);
    Some(match class {
        2 => conv(&zn_stats(2), &s6),
        3 => conv(&d8, &s4),
        4 => conv(&zn_stats(3), &s3wr2),
        5 => conv(&zn_stats(2), &conv(&zn_stats(2), &s4)),
        6 | 13 | 15 | 22 => conv(&zn_stats(6), &s3),
        7 => conv(&zn_stats(4), &d8),
        9 => conv(&zn_stats(3), &d8),
        10 => conv(&zn_stats(3), &conv(&s3, &s3)),
        11 => conv(&zn_stats(4), &conv(&zn_stats(2), &zn_stats(2))),
        12 | 17 => zn_stats(10),
        16 => conv(&zn_stats(4), &s4),
        18 => conv(&zn_stats(6), &zn_stats(2)),
        19 => zn_stats(8),
        20 | 23 => zn_stats(12),
        24 => zn_stats(9),
        25 => conv(&zn_stats(3), &sl23),
        _ => return None,
    })
}

/// The Coxeter presentation of W(E6) on the fundamental reflections.
pub fn coxeter_presentation() -> Vec<Relator> {
    let mut rels: Vec<Relator> = Vec::new();
    for i in 1..=6i32 {
        rels.push(vec![i, i]);
    }
    for i in 0..6usize {
        for j in i + 1..6usize {
            let m = if crate::rootsys::CARTAN[i][j] == -1 {
                3
            } else {
                2
            };
            let mut rel = Vec::new();
            for _ in 0..m {
                rel.push(i as i32 + 1);
                rel.push(j as i32 + 1);
            }
            rels.push(rel);
        }
    }
    rels
}
