//! Small exact integer matrices: the 6x6 kind that acts on the root
//! lattice, plus a minimal dense type for the 78-dimensional adjoint
//! representation.

use std::ops::{Index, IndexMut};

/// 6x6 integer matrix. Columns hold images of the fundamental roots, so
/// `m * v` computes the image of a lattice vector `v` written in the
/// fundamental basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat6(pub [[i64; 6]; 6]);

impl Mat6 {
    pub const fn zero() -> Self {
        Mat6([[0; 6]; 6])
    }

    pub const fn identity() -> Self {
        let mut m = [[0i64; 6]; 6];
        let mut i = 0;
        while i < 6 {
            m[i][i] = 1;
            i += 1;
        }
        Mat6(m)
    }

    pub fn mul(&self, rhs: &Mat6) -> Mat6 {
        let mut out = Mat6::zero();
        for i in 0..6 {
            for k in 0..6 {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..6 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat6) -> Mat6 {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Mat6 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64; 6]) -> [i64; 6] {
        let mut out = [0i64; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Mat6 {
        let mut base = *self;
        let mut acc = Mat6::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Sum of powers `I + A + ... + A^(m-1)`, the exponent matrix of an
    /// m-th power of a twisted torus-normalizer element.
    pub fn power_sum(&self, m: u32) -> Mat6 {
        let mut acc = Mat6::zero();
        let mut cur = Mat6::identity();
        for _ in 0..m {
            acc = acc.add(&cur);
            cur = cur.mul(self);
        }
        acc
    }

    /// Multiplicative order; panics above the cap (nothing in the Weyl
    /// group of E6 exceeds order 12).
    pub fn order(&self) -> u32 {
        let mut cur = *self;
        for k in 1..=40 {
            if cur == Mat6::identity() {
                return k;
            }
            cur = cur.mul(self);
        }
        panic!("matrix order exceeds cap");
    }

    /// Exact determinant via fraction-free elimination in i128.
    pub fn det(&self) -> i128 {
        let mut a = [[0i128; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                a[i][j] = self.0[i][j] as i128;
            }
        }
        det6_i128(a)
    }

    /// Characteristic polynomial coefficients, lowest degree first
    /// (Faddeev–LeVerrier over exact integers; degree 6 so i128 is ample).
    pub fn charpoly(&self) -> [i128; 7] {
        let mut a = [[0i128; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                a[i][j] = self.0[i][j] as i128;
            }
        }
        let mut coeffs = [0i128; 7]; // c[k] = coefficient of t^k
        coeffs[6] = 1;
        let mut m = a; // M_1 = A
        for k in 1..=6usize {
            let tr: i128 = (0..6).map(|i| m[i][i]).sum();
            let c = -tr / k as i128;
            coeffs[6 - k] = c;
            if k == 6 {
                break;
            }
            // M_{k+1} = A (M_k + c I)
            let mut mk = m;
            for i in 0..6 {
                mk[i][i] += c;
            }
            let mut next = [[0i128; 6]; 6];
            for i in 0..6 {
                for l in 0..6 {
                    if a[i][l] == 0 {
                        continue;
                    }
                    for j in 0..6 {
                        next[i][j] += a[i][l] * mk[l][j];
                    }
                }
            }
            m = next;
        }
        coeffs
    }
}

pub fn det6_i128(mut a: [[i128; 6]; 6]) -> i128 {
    // Bareiss fraction-free Gaussian elimination.
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..5 {
        if a[k][k] == 0 {
            let mut piv = None;
            for i in k + 1..6 {
                if a[i][k] != 0 {
                    piv = Some(i);
                    break;
                }
            }
            match piv {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..6 {
            for j in k + 1..6 {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[5][5]
}

/// Dense square integer matrix for the adjoint representation (dimension 78).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigMat {
    pub n: usize,
    pub data: Vec<i64>,
}

impl BigMat {
    pub fn zero(n: usize) -> Self {
        BigMat {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BigMat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, rhs: &BigMat) -> BigMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = BigMat::zero(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let orow = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                for j in 0..n {
                    orow[j] += a * rrow[j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &BigMat) -> BigMat {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(rhs.data.iter()) {
            *x += *y;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl Index<(usize, usize)> for BigMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for BigMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_order_of_permutation_like_matrix() {
        let mut m = Mat6::zero();
        // cyclic shift of the basis
        for i in 0..6 {
            m.0[(i + 1) % 6][i] = 1;
        }
        assert_eq!(m.det(), -1);
        assert_eq!(m.order(), 6);
        assert_eq!(m.pow(6), Mat6::identity());
    }

    #[test]
    fn power_sum_matches_direct_sum() {
        let mut m = Mat6::identity();
        m.0[0][1] = 2;
        m.0[3][4] = -1;
        let b = m.power_sum(4);
        let direct = Mat6::identity()
            .add(&m)
            .add(&m.mul(&m))
            .add(&m.mul(&m).mul(&m));
        assert_eq!(b, direct);
    }

    #[test]
    fn charpoly_of_identity() {
        let cp = Mat6::identity().charpoly();
        // (t-1)^6 = t^6 - 6t^5 + 15t^4 - 20t^3 + 15t^2 - 6t + 1
        assert_eq!(cp, [1, -6, 15, -20, 15, -6, 1]);
    }
}
