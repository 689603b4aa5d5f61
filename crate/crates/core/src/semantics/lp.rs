//! Exact rational linear feasibility with strict inequalities.
//!
//! Dense two-phase simplex with Bland's rule. Strict constraints are handled
//! by a shared slack `t`: `a·x < b` becomes `a·x + t <= b`, `t <= 1` is
//! added, and the system is strictly feasible iff the maximum of `t` is
//! positive. All variables are implicitly nonnegative.

use std::collections::BTreeMap;

use crate::guard::Relation;
use crate::rational::Rational;

/// Sparse affine expression `constant + Σ coeff·var`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinExpr {
    pub constant: Rational,
    pub terms: BTreeMap<usize, Rational>,
}

impl LinExpr {
    pub fn constant(c: Rational) -> Self {
        LinExpr { constant: c, terms: BTreeMap::new() }
    }

    pub fn var(v: usize) -> Self {
        LinExpr { constant: Rational::zero(), terms: [(v, Rational::one())].into() }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (v, c) in &other.terms {
            let entry = out.terms.entry(*v).or_default();
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(v);
            }
        }
        out
    }

    pub fn neg(&self) -> LinExpr {
        LinExpr { constant: -&self.constant, terms: self.terms.iter().map(|(v, c)| (*v, -c)).collect() }
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        self.add(&other.neg())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (v, c) in &self.terms {
            acc += c * &point[*v];
        }
        acc
    }
}

/// `expr ◁ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub expr: LinExpr,
    pub relation: Relation,
}

impl Constraint {
    /// `lhs ◁ rhs`.
    pub fn new(lhs: &LinExpr, relation: Relation, rhs: &LinExpr) -> Self {
        Constraint { expr: lhs.sub(rhs), relation }
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        self.relation.holds(&self.expr.eval(point), &Rational::zero())
    }

    /// Truth value when the constraint mentions no variable.
    pub fn constant_truth(&self) -> Option<bool> {
        self.expr.is_constant().then(|| self.relation.holds(&self.expr.constant, &Rational::zero()))
    }
}

/// A nonnegative point satisfying every constraint, if one exists.
pub fn solve(nvars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let has_strict = constraints.iter().any(|c| matches!(c.relation, Relation::Lt | Relation::Gt));
    let slack = nvars;
    let ncols = if has_strict { nvars + 1 } else { nvars };
    let mut rows: Vec<Row> = Vec::new();
    for c in constraints {
        let mut coeffs = vec![Rational::zero(); ncols];
        for (v, k) in &c.expr.terms {
            coeffs[*v] = k.clone();
        }
        let rhs = -&c.expr.constant;
        let kind = match c.relation {
            Relation::Le => Kind::Le,
            Relation::Ge => Kind::Ge,
            Relation::Eq => Kind::Eq,
            Relation::Lt => {
                coeffs[slack] = Rational::one();
                Kind::Le
            }
            Relation::Gt => {
                coeffs[slack] = -Rational::one();
                Kind::Ge
            }
        };
        rows.push(Row { coeffs, kind, rhs });
    }
    if has_strict {
        let mut coeffs = vec![Rational::zero(); ncols];
        coeffs[slack] = Rational::one();
        rows.push(Row { coeffs, kind: Kind::Le, rhs: Rational::one() });
    }
    let mut objective = vec![Rational::zero(); ncols];
    if has_strict {
        objective[slack] = Rational::one();
    }
    let (value, point) = maximize(ncols, rows, &objective)?;
    if has_strict && !value.is_positive() {
        return None;
    }
    let point = point[..nvars].to_vec();
    debug_assert!(constraints.iter().all(|c| c.holds(&point)));
    Some(point)
}

pub fn feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    solve(nvars, constraints).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    kind: Kind,
    rhs: Rational,
}

struct Tableau {
    /// `m` rows of `width` coefficients followed by the right-hand side.
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost · x` over columns `0..allowed`; `None` if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Option<Rational> {
        loop {
            // Reduced cost r_j = c_B · A_j - c_j; enter the first negative one.
            let reduced = |j: usize| -> Rational {
                let mut r = -&cost[j];
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.a[i][j].is_zero() {
                        r += &cost[b] * &self.a[i][j];
                    }
                }
                r
            };
            let entering = (0..allowed).find(|&j| !self.basis.contains(&j) && reduced(j).is_negative());
            let Some(col) = entering else {
                let mut value = Rational::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    value += &cost[b] * &self.a[i][self.width];
                }
                return Some(value);
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.a.len() {
                let coeff = &self.a[i][col];
                if !coeff.is_positive() {
                    continue;
                }
                let ratio = &self.a[i][self.width] / coeff;
                let better = match &best {
                    None => true,
                    Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let (_, row, _) = best?;
            self.pivot(row, col);
        }
    }
}

fn maximize(nvars: usize, mut rows: Vec<Row>, objective: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    for r in rows.iter_mut() {
        if r.rhs.is_negative() {
            r.rhs = -&r.rhs;
            for c in r.coeffs.iter_mut() {
                *c = -&*c;
            }
            r.kind = match r.kind {
                Kind::Le => Kind::Ge,
                Kind::Ge => Kind::Le,
                Kind::Eq => Kind::Eq,
            };
        }
    }
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.kind != Kind::Eq).count();
    let n_art = rows.iter().filter(|r| r.kind != Kind::Le).count();
    let art_start = nvars + n_slack;
    let width = art_start + n_art;
    let mut a = vec![vec![Rational::zero(); width + 1]; m];
    let mut basis = vec![0; m];
    let (mut s, mut t) = (nvars, art_start);
    for (i, r) in rows.iter().enumerate() {
        a[i][..nvars].clone_from_slice(&r.coeffs);
        a[i][width] = r.rhs.clone();
        match r.kind {
            Kind::Le => {
                a[i][s] = Rational::one();
                basis[i] = s;
                s += 1;
            }
            Kind::Ge => {
                a[i][s] = -Rational::one();
                s += 1;
                a[i][t] = Rational::one();
                basis[i] = t;
                t += 1;
            }
            Kind::Eq => {
                a[i][t] = Rational::one();
                basis[i] = t;
                t += 1;
            }
        }
    }
    let mut tab = Tableau { a, basis, width };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        let v = tab.optimize(&phase1, width).expect("phase one is bounded");
        if v.is_negative() {
            return None;
        }
        // Drive zero-valued artificials out of the basis.
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.a[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.a.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tab.a.iter_mut() {
            row.drain(art_start..width);
        }
        tab.width = art_start;
    }

    let mut cost = vec![Rational::zero(); tab.width];
    cost[..objective.len()].clone_from_slice(objective);
    let value = tab.optimize(&cost, tab.width)?;
    let mut point = vec![Rational::zero(); nvars];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nvars {
            point[b] = tab.a[i][tab.width].clone();
        }
    }
    Some((value, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(terms: &[(usize, i64)], constant: i64, rel: Relation) -> Constraint {
        Constraint {
            expr: LinExpr {
                constant: Rational::from_integer(constant),
                terms: terms.iter().map(|(v, k)| (*v, Rational::from_integer(*k))).collect(),
            },
            relation: rel,
        }
    }

    #[test]
    fn simple_systems() {
        // x + y = 1, x > y
        let sys = [c(&[(0, 1), (1, 1)], -1, Relation::Eq), c(&[(0, 1), (1, -1)], 0, Relation::Gt)];
        let p = solve(2, &sys).unwrap();
        assert!(sys.iter().all(|k| k.holds(&p)));

        // x < 0 is infeasible for nonnegative x.
        assert!(!feasible(1, &[c(&[(0, 1)], 0, Relation::Lt)]));
        // x <= 0 is feasible (x = 0).
        assert!(feasible(1, &[c(&[(0, 1)], 0, Relation::Le)]));
        // x > 1 and x < 1.
        assert!(!feasible(1, &[c(&[(0, 1)], -1, Relation::Gt), c(&[(0, 1)], -1, Relation::Lt)]));
        // x >= 1 and x <= 1.
        assert!(feasible(1, &[c(&[(0, 1)], -1, Relation::Ge), c(&[(0, 1)], -1, Relation::Le)]));
        // Redundant equalities.
        assert!(feasible(2, &[c(&[(0, 1), (1, 1)], -2, Relation::Eq), c(&[(0, 2), (1, 2)], -4, Relation::Eq)]));
        assert!(feasible(0, &[]));
    }

    /// Fourier–Motzkin elimination with strictness flags: an independent
    /// decision procedure for small systems. Rows are `a·x ◁ b` with
    /// ◁ ∈ {<=, <}.
    fn fourier_motzkin(nvars: usize, constraints: &[Constraint]) -> bool {
        let mut rows: Vec<(Vec<Rational>, Rational, bool)> = Vec::new();
        let mut push = |coeffs: Vec<Rational>, rhs: Rational, strict: bool| rows.push((coeffs, rhs, strict));
        for k in constraints {
            let mut a = vec![Rational::zero(); nvars];
            for (v, x) in &k.expr.terms {
                a[*v] = x.clone();
            }
            let b = -&k.expr.constant;
            let neg = |v: &Vec<Rational>| v.iter().map(|x| -x).collect::<Vec<_>>();
            match k.relation {
                Relation::Le => push(a, b, false),
                Relation::Lt => push(a, b, true),
                Relation::Ge => push(neg(&a), -b, false),
                Relation::Gt => push(neg(&a), -b, true),
                Relation::Eq => {
                    push(a.clone(), b.clone(), false);
                    push(neg(&a), -b, false);
                }
            }
        }
        for v in 0..nvars {
            let mut e = vec![Rational::zero(); nvars];
            e[v] = -Rational::one();
            push(e, Rational::zero(), false);
        }
        for v in 0..nvars {
            let (mut pos, mut negs, mut rest) = (vec![], vec![], vec![]);
            for r in rows.drain(..) {
                if r.0[v].is_positive() {
                    pos.push(r);
                } else if r.0[v].is_negative() {
                    negs.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &pos {
                for n in &negs {
                    let fp = -&n.0[v];
                    let fnn = p.0[v].clone();
                    let coeffs: Vec<Rational> = p.0.iter().zip(&n.0).map(|(x, y)| &(x * &fp) + &(y * &fnn)).collect();
                    let rhs = &(&p.1 * &fp) + &(&n.1 * &fnn);
                    rest.push((coeffs, rhs, p.2 || n.2));
                }
            }
            rows = rest;
        }
        rows.iter().all(|(_, b, strict)| if *strict { b.is_positive() } else { !b.is_negative() })
    }

    fn rel() -> impl Strategy<Value = Relation> {
        prop::sample::select(vec![Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge, Relation::Gt])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_fourier_motzkin(
            sys in prop::collection::vec(
                (prop::collection::vec(-3i64..=3, 3), -4i64..=4, rel()),
                0..6,
            )
        ) {
            let constraints: Vec<Constraint> = sys
                .iter()
                .map(|(coeffs, k, r)| {
                    let terms: Vec<(usize, i64)> = coeffs.iter().copied().enumerate().filter(|(_, x)| *x != 0).collect();
                    c(&terms, *k, *r)
                })
                .collect();
            let got = solve(3, &constraints);
            prop_assert_eq!(got.is_some(), fourier_motzkin(3, &constraints));
            if let Some(p) = got {
                prop_assert!(p.iter().all(|x| !x.is_negative()));
                prop_assert!(constraints.iter().all(|k| k.holds(&p)));
            }
        }
    }
}
