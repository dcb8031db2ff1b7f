use super::span::in_row_span;
use super::{Presentation, Seed};
use crate::LaurentPoly;

/// Exponent bound for the multipliers tried when testing whether a relation
/// follows from the others.
const SPAN_BOUND: i32 = 2;

/// One change of generators made by [`simplify_with_log`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `generator = Σ coefficient·h` was substituted away.
    Eliminate { generator: String, expression: Vec<(String, LaurentPoly)> },
    /// `generator` was replaced by `renamed = generator − multiplier·by`.
    Replace { generator: String, renamed: String, by: String, multiplier: LaurentPoly },
}

pub fn simplify(p: &Presentation) -> Presentation {
    simplify_with_log(p).0
}

/// Reduces a presentation by moves that preserve the module and `φ`:
///
/// - unit pivots: a relation with a unit coefficient eliminates that generator
///   (first such row in order, first unit entry in generator order);
/// - removal of zero relations and relations in the span of the others
///   (Laurent multiples of one row, or combinations found within a bounded
///   exponent window);
/// - when no unit remains, one row or column operation that turns an entry
///   into a unit, preferring row operations since they keep the generators.
pub fn simplify_with_log(p: &Presentation) -> (Presentation, Vec<Step>) {
    let mut st = State {
        mu: p.mu,
        generators: p.generators.clone(),
        rows: p.rows.clone(),
        phi: p.phi.clone(),
        seeds: p.seeds.clone(),
        log: Vec::new(),
    };
    loop {
        st.pivot_units();
        st.drop_redundant_rows();
        if !st.create_unit() {
            break;
        }
    }
    st.homogenize_phi();
    let State { mu, generators, rows, phi, seeds, log } = st;
    let out = Presentation::new(mu, generators, rows, phi, seeds).expect("simplification preserves the invariants");
    (out, log)
}

struct State {
    mu: usize,
    generators: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
    phi: Vec<LaurentPoly>,
    seeds: Vec<Seed>,
    log: Vec<Step>,
}

impl State {
    fn pivot_units(&mut self) {
        let mu = self.mu;
        loop {
            self.rows.retain(|r| r.iter().any(|c| !c.is_zero()));
            let pivot = self
                .rows
                .iter()
                .enumerate()
                .find_map(|(i, r)| r.iter().position(LaurentPoly::is_unit).map(|g| (i, g)));
            let Some((pr, pg)) = pivot else { break };
            let row = self.rows.remove(pr);
            let neg_inv = -&row[pg].unit_inverse().expect("pivot is a unit");
            // generator pg = Σ_{h≠pg} expr[h]·h
            let expr: Vec<LaurentPoly> = row
                .iter()
                .enumerate()
                .map(|(h, c)| if h == pg { LaurentPoly::zero(mu) } else { &neg_inv * c })
                .collect();
            let substitute = |v: &mut Vec<LaurentPoly>| {
                let c = v[pg].clone();
                if !c.is_zero() {
                    for (h, e) in expr.iter().enumerate() {
                        if h != pg && !e.is_zero() {
                            v[h] = &v[h] + &(&c * e);
                        }
                    }
                }
                v.remove(pg);
            };
            for r in self.rows.iter_mut() {
                substitute(r);
            }
            for s in self.seeds.iter_mut() {
                substitute(&mut s.value);
            }
            self.log.push(Step::Eliminate {
                generator: self.generators[pg].clone(),
                expression: self
                    .generators
                    .iter()
                    .zip(&expr)
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(g, e)| (g.clone(), e.clone()))
                    .collect(),
            });
            self.generators.remove(pg);
            self.phi.remove(pg);
        }
    }

    fn drop_redundant_rows(&mut self) {
        drop_multiples(&mut self.rows);
        let mut i = self.rows.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Vec<LaurentPoly>> =
                self.rows.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            if !others.is_empty() && in_row_span(&others, &self.rows[i], self.mu, SPAN_BOUND) {
                self.rows.remove(i);
            }
        }
    }

    /// Candidate multipliers `λ` with `entry + λ·other` equal to `±m` for a
    /// monomial `m` of `entry`.
    fn unit_multiplier(entry: &LaurentPoly, other: &LaurentPoly) -> Option<LaurentPoly> {
        if entry.is_zero() || other.is_zero() {
            return None;
        }
        for (m, _) in entry.terms() {
            let plus = LaurentPoly::monomial(entry.mu(), m.clone(), 1.into());
            for u in [plus.clone(), -&plus] {
                let diff = &u - entry;
                if let Some(lambda) = diff.div_exact(other) {
                    return Some(lambda);
                }
            }
        }
        None
    }

    fn create_unit(&mut self) -> bool {
        let n = self.rows.len();
        let g = self.generators.len();
        // row operations: rows[i] += λ·rows[j]
        for i in 0..n {
            for c in 0..g {
                for j in (0..n).filter(|&j| j != i) {
                    if let Some(lambda) = Self::unit_multiplier(&self.rows[i][c], &self.rows[j][c]) {
                        let src = self.rows[j].clone();
                        for (x, y) in self.rows[i].iter_mut().zip(&src) {
                            *x = &*x + &(&lambda * y);
                        }
                        return true;
                    }
                }
            }
        }
        // column operations: column c += λ·column h, i.e. h becomes h − λ·c
        for i in 0..n {
            for c in 0..g {
                for h in (0..g).filter(|&h| h != c) {
                    if let Some(lambda) = Self::unit_multiplier(&self.rows[i][c], &self.rows[i][h]) {
                        self.replace_generator(c, h, lambda);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Replaces generators whose `φ`-value is not `0` or some `t_k − 1` by
    /// `h − λ·c` with `φ(h) − λ·φ(c) = t_k − 1`, when such a `λ` exists.
    fn homogenize_phi(&mut self) {
        let mu = self.mu;
        let graded: Vec<LaurentPoly> = (1..=mu).map(|k| LaurentPoly::var_minus_one(mu, k)).collect();
        for h in 0..self.generators.len() {
            if self.phi[h].is_zero() || graded.contains(&self.phi[h]) {
                continue;
            }
            let found = (0..self.generators.len()).filter(|&c| c != h && !self.phi[c].is_zero()).find_map(|c| {
                graded.iter().find_map(|target| (&self.phi[h] - target).div_exact(&self.phi[c])).map(|l| (c, l))
            });
            if let Some((c, lambda)) = found {
                self.replace_generator(c, h, lambda);
            }
        }
    }

    fn replace_generator(&mut self, c: usize, h: usize, lambda: LaurentPoly) {
        for v in self.rows.iter_mut().chain(self.seeds.iter_mut().map(|s| &mut s.value)) {
            let add = &lambda * &v[h];
            v[c] = &v[c] + &add;
        }
        self.phi[h] = &self.phi[h] - &(&lambda * &self.phi[c]);
        let mut renamed = format!("{}'", self.generators[h]);
        while self.generators.contains(&renamed) {
            renamed.push('\'');
        }
        self.log.push(Step::Replace {
            generator: self.generators[h].clone(),
            renamed: renamed.clone(),
            by: self.generators[c].clone(),
            multiplier: lambda,
        });
        self.generators[h] = renamed;
    }
}

/// `Some(λ)` with `row = λ·base`.
fn multiple_of(row: &[LaurentPoly], base: &[LaurentPoly]) -> Option<LaurentPoly> {
    let k = base.iter().position(|c| !c.is_zero())?;
    let lambda = row[k].div_exact(&base[k])?;
    row.iter().zip(base).all(|(r, b)| *r == &lambda * b).then_some(lambda)
}

fn drop_multiples(rows: &mut Vec<Vec<LaurentPoly>>) {
    loop {
        let n = rows.len();
        // prefer dropping the later of two rows
        let victim = (0..n).rev().find(|&i| (0..n).any(|j| j != i && multiple_of(&rows[i], &rows[j]).is_some()));
        match victim {
            Some(i) => {
                rows.remove(i);
            }
            None => break,
        }
    }
}
