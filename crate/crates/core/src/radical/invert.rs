//! Inversion down a tower of prime-degree steps.
//!
//! Each generator `p^(1/q)` is adjoined through a chain of prime-degree steps
//! `t^r = d`, where `d` lies in the field below the step. Over a step of
//! degree 2 or 3, `x^-1 = adj(x) / N(x)` with closed-form adjugate and norm,
//! and `N(x)` is inverted one step down. Steps of larger prime degree solve
//! `M_x y = 1` by Gauss-Jordan elimination over the field below, where `M_x`
//! is the `r x r` multiplication matrix of `x`.

use num_traits::{One, Zero};

use super::{add_terms, mul_terms, Monomial, RadicalBasis, Terms};
use crate::numeric::Rational;

/// Adjoin `t = p_i^(unit/q_i)` with `t^degree` already in the field below.
#[derive(Debug, Clone, Copy)]
struct Step {
    root: usize,
    unit: u32,
    degree: u32,
}

struct Tower<'a> {
    basis: &'a RadicalBasis,
    steps: Vec<Step>,
}

pub(super) fn invert_terms(basis: &RadicalBasis, x: &Terms) -> Terms {
    let mut steps = Vec::new();
    for (i, root) in basis.roots().iter().enumerate() {
        let mut unit = root.degree;
        for r in prime_factors(root.degree) {
            unit /= r;
            steps.push(Step { root: i, unit, degree: r });
        }
    }
    let tower = Tower { basis, steps };
    tower.invert(x, tower.steps.len())
}

/// Prime factors with multiplicity, ascending.
fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Tower<'_> {
    /// Whether `x` lies in the field generated by the first `level` steps.
    fn within(&self, x: &Terms, level: usize) -> bool {
        let mut granularity = vec![0u32; self.basis.len()];
        for s in &self.steps[..level] {
            granularity[s.root] = s.unit;
        }
        x.keys().all(|m| {
            m.exponents()
                .iter()
                .zip(&granularity)
                .all(|(&k, &g)| if g == 0 { k == 0 } else { k % g == 0 })
        })
    }

    fn one(&self) -> Terms {
        single(Monomial::one(self.basis.len()), Rational::one())
    }

    /// `t^s` for the generator of `step`.
    fn power(&self, step: Step, s: u32) -> Terms {
        let q = self.basis.roots()[step.root].degree;
        let k = step.unit * s;
        if k < q {
            let mut ks = vec![0; self.basis.len()];
            ks[step.root] = k;
            return single(Monomial::new(ks), Rational::one());
        }
        debug_assert_eq!(k, q);
        single(Monomial::one(self.basis.len()), Rational::from_integer(self.basis.roots()[step.root].prime.clone()))
    }

    fn mul(&self, a: &Terms, b: &Terms) -> Terms {
        mul_terms(self.basis, a, b)
    }

    /// Invert `x`, which lies in the field of the first `level` steps.
    fn invert(&self, x: &Terms, level: usize) -> Terms {
        debug_assert!(!x.is_empty());
        if x.len() == 1 {
            let (m, c) = x.iter().next().unwrap();
            return invert_monomial(self.basis, m, c);
        }
        let mut level = level;
        while level > 0 && self.within(x, level - 1) {
            level -= 1;
        }
        if level == 0 {
            let c = x.values().next().unwrap();
            return single(Monomial::one(self.basis.len()), c.recip());
        }
        let step = self.steps[level - 1];
        let below = level - 1;

        // x = sum_s a_s t^s with a_s in the field below.
        let mut a: Vec<Terms> = vec![Terms::new(); step.degree as usize];
        for (m, c) in x {
            let k = m.exponents()[step.root];
            let s = (k / step.unit) % step.degree;
            let mut ks = m.exponents().to_vec();
            ks[step.root] = k - s * step.unit;
            a[s as usize].insert(Monomial::new(ks), c.clone());
        }
        let d = self.power(step, step.degree);

        match step.degree {
            2 => {
                // (a + b t)^-1 = (a - b t) / (a^2 - b^2 d)
                let (a0, a1) = (&a[0], &a[1]);
                let mut norm = self.mul(a0, a0);
                add_terms(&mut norm, &negate(&self.mul(&self.mul(a1, a1), &d)));
                let inv = self.invert(&norm, below);
                let mut adj = a0.clone();
                add_terms(&mut adj, &negate(&self.mul(a1, &self.power(step, 1))));
                self.mul(&adj, &inv)
            }
            3 => {
                // x = a + b t + c t^2:
                // N = a^3 + d b^3 + d^2 c^3 - 3 d a b c
                // adj = (a^2 - d b c) + (d c^2 - a b) t + (b^2 - a c) t^2
                let (a0, a1, a2) = (&a[0], &a[1], &a[2]);
                let bc = self.mul(a1, a2);
                let ab = self.mul(a0, a1);
                let ac = self.mul(a0, a2);
                let mut u0 = self.mul(a0, a0);
                add_terms(&mut u0, &negate(&self.mul(&d, &bc)));
                let mut u1 = self.mul(&d, &self.mul(a2, a2));
                add_terms(&mut u1, &negate(&ab));
                let mut u2 = self.mul(a1, a1);
                add_terms(&mut u2, &negate(&ac));
                // N = a u0 + d (b u2 + c u1)
                let mut norm = self.mul(a0, &u0);
                let mut tail = self.mul(a1, &u2);
                add_terms(&mut tail, &self.mul(a2, &u1));
                add_terms(&mut norm, &self.mul(&d, &tail));
                let inv = self.invert(&norm, below);
                let mut adj = u0;
                add_terms(&mut adj, &self.mul(&u1, &self.power(step, 1)));
                add_terms(&mut adj, &self.mul(&u2, &self.power(step, 2)));
                self.mul(&adj, &inv)
            }
            _ => self.eliminate(&a, &d, step, below),
        }
    }

    /// Solve `M_x y = 1` over the field below `step`.
    fn eliminate(&self, a: &[Terms], d: &Terms, step: Step, below: usize) -> Terms {
        let q = step.degree as usize;
        // Column j holds x * t^j; entry (i, j) is a_{(i - j) mod q}, times d when it wrapped.
        let mut rows: Vec<Vec<Terms>> = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| {
                        let s = (i + q - j) % q;
                        if i < j {
                            self.mul(&a[s], d)
                        } else {
                            a[s].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Terms> = (0..q).map(|i| if i == 0 { self.one() } else { Terms::new() }).collect();

        for col in 0..q {
            let pivot_row = (col..q)
                .find(|&r| !rows[r][col].is_empty())
                .expect("multiplication map of a nonzero element is nonsingular");
            rows.swap(col, pivot_row);
            rhs.swap(col, pivot_row);

            let inv = self.invert(&rows[col][col], below);
            for j in col..q {
                rows[col][j] = self.mul(&rows[col][j], &inv);
            }
            rhs[col] = self.mul(&rhs[col], &inv);

            for r in 0..q {
                if r == col || rows[r][col].is_empty() {
                    continue;
                }
                let factor = negate(&rows[r][col]);
                for j in col..q {
                    if rows[col][j].is_empty() {
                        continue;
                    }
                    let delta = self.mul(&factor, &rows[col][j]);
                    add_terms(&mut rows[r][j], &delta);
                }
                if !rhs[col].is_empty() {
                    let delta = self.mul(&factor, &rhs[col]);
                    add_terms(&mut rhs[r], &delta);
                }
            }
        }

        let mut out = Terms::new();
        for (s, y) in rhs.iter().enumerate() {
            add_terms(&mut out, &self.mul(y, &self.power(step, s as u32)));
        }
        out
    }
}

/// `(c * prod r_i^k_i)^-1 = c^-1 * prod p_i^-1 * r_i^(q_i - k_i)`.
fn invert_monomial(basis: &RadicalBasis, m: &Monomial, c: &Rational) -> Terms {
    let mut coef = c.recip();
    let mut ks = Vec::with_capacity(basis.len());
    for (&k, root) in m.exponents().iter().zip(basis.roots()) {
        if k == 0 {
            ks.push(0);
        } else {
            ks.push(root.degree - k);
            coef /= Rational::from_integer(root.prime.clone());
        }
    }
    single(Monomial::new(ks), coef)
}

fn single(m: Monomial, c: Rational) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(m, c);
    }
    t
}

fn negate(t: &Terms) -> Terms {
    t.iter().map(|(m, v)| (m.clone(), -v)).collect()
}
