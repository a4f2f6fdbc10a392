use serde::{Deserialize, Serialize};

use crate::numerics::{DenseMatrix, DenseVector};
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemTag {
    Newsvendor,
    Matching,
    Generic,
}

/// `min c^T x + reg_eps ||x||^2  s.t.  G x <= h`.
///
/// The parameter vector `c` appears only in the objective; the constraints
/// are fixed at construction. Every builder produces a bounded region (all
/// include full box rows) and validates feasibility, caching a feasible
/// witness used to start the interior-point solver and as the default
/// initialization of the recursive loop.
#[derive(Clone, Debug)]
pub struct ConvexProgram<S> {
    n: usize,
    reg_eps: S,
    ineq_g: DenseMatrix<S>,
    ineq_h: DenseVector<S>,
    tag: ProblemTag,
    interior: DenseVector<S>,
}

impl<S: Scalar> ConvexProgram<S> {
    /// Inventory ordering program:
    /// `1^T x >= t1`, `1^T x <= t2`, `s1 <= x <= s2`, encoded as `2 + 2n`
    /// inequality rows in the order (total lower, total upper, per-product
    /// lower, per-product upper).
    pub fn newsvendor(
        t1: S,
        t2: S,
        s1: &DenseVector<S>,
        s2: &DenseVector<S>,
        reg_eps: S,
    ) -> Result<Self> {
        let n = s1.len();
        if s2.len() != n || n == 0 {
            return Err(Error::InfeasibleSpec(format!(
                "box bounds must have equal nonzero length, got {} and {}",
                s1.len(),
                s2.len()
            )));
        }
        if t1 > t2 {
            return Err(Error::InfeasibleSpec(format!(
                "total-order window is empty: T1 = {t1} > T2 = {t2}"
            )));
        }
        for i in 0..n {
            if s1[i] > s2[i] {
                return Err(Error::InfeasibleSpec(format!(
                    "product {i} box is empty: {} > {}",
                    s1[i], s2[i]
                )));
            }
        }
        if s1.sum() > t2 {
            return Err(Error::InfeasibleSpec(format!(
                "minimum orders already exceed T2: {} > {t2}",
                s1.sum()
            )));
        }
        if s2.sum() < t1 {
            return Err(Error::InfeasibleSpec(format!(
                "maximum orders cannot reach T1: {} < {t1}",
                s2.sum()
            )));
        }

        let m = 2 + 2 * n;
        let mut g = DenseMatrix::zeros(m, n);
        let mut h = DenseVector::zeros(m);
        for j in 0..n {
            g[(0, j)] = -S::one();
            g[(1, j)] = S::one();
        }
        h[0] = -t1;
        h[1] = t2;
        for i in 0..n {
            g[(2 + i, i)] = -S::one();
            h[2 + i] = -s1[i];
            g[(2 + n + i, i)] = S::one();
            h[2 + n + i] = s2[i];
        }

        let interior = newsvendor_center(t1, t2, s1, s2);
        Ok(Self {
            n,
            reg_eps,
            ineq_g: g,
            ineq_h: h,
            tag: ProblemTag::Newsvendor,
            interior,
        })
    }

    /// Assignment relaxation over `players x players` pairs, flattened
    /// row-major: column sums <= 1, row sums <= 1, total >= s, 0 <= z <= 1.
    /// Constraint rows: `2 players + 1 + 2 players^2`.
    pub fn matching(players: usize, s: S, reg_eps: S) -> Result<Self> {
        if players == 0 {
            return Err(Error::InfeasibleSpec("players must be >= 1".into()));
        }
        if s < S::zero() || s > S::of(players as f64) {
            return Err(Error::InfeasibleSpec(format!(
                "service floor {s} outside [0, {players}]"
            )));
        }
        if reg_eps <= S::zero() {
            return Err(Error::InfeasibleSpec(
                "matching program requires reg_eps > 0".into(),
            ));
        }
        let p = players;
        let n = p * p;
        let m = 2 * p + 1 + 2 * n;
        let mut g = DenseMatrix::zeros(m, n);
        let mut h = DenseVector::zeros(m);

        // column sums: row j covers z[i*p + j] for all i
        for j in 0..p {
            for i in 0..p {
                g[(j, i * p + j)] = S::one();
            }
            h[j] = S::one();
        }
        // row sums: row p + i covers z[i*p + j] for all j
        for i in 0..p {
            for j in 0..p {
                g[(p + i, i * p + j)] = S::one();
            }
            h[p + i] = S::one();
        }
        // total service floor: -1^T z <= -s
        for k in 0..n {
            g[(2 * p, k)] = -S::one();
        }
        h[2 * p] = -s;
        // box rows
        for k in 0..n {
            g[(2 * p + 1 + k, k)] = -S::one();
            h[2 * p + 1 + k] = S::zero();
            g[(2 * p + 1 + n + k, k)] = S::one();
            h[2 * p + 1 + n + k] = S::one();
        }

        // uniform point midway between the service floor and the sum caps
        let lo = s.to_f64().unwrap() / (n as f64);
        let hi = 1.0 / (p as f64);
        let t = S::of(0.5 * (lo + hi));
        let interior = DenseVector::filled(n, t);

        Ok(Self {
            n,
            reg_eps,
            ineq_g: g,
            ineq_h: h,
            tag: ProblemTag::Matching,
            interior,
        })
    }

    /// Plain box `lower <= x <= upper`.
    pub fn boxed(lower: &DenseVector<S>, upper: &DenseVector<S>, reg_eps: S) -> Result<Self> {
        let n = lower.len();
        if upper.len() != n || n == 0 {
            return Err(Error::InfeasibleSpec(
                "box bounds must have equal nonzero length".into(),
            ));
        }
        for i in 0..n {
            if lower[i] > upper[i] {
                return Err(Error::InfeasibleSpec(format!(
                    "coordinate {i} box is empty: {} > {}",
                    lower[i], upper[i]
                )));
            }
        }
        let m = 2 * n;
        let mut g = DenseMatrix::zeros(m, n);
        let mut h = DenseVector::zeros(m);
        for i in 0..n {
            g[(i, i)] = -S::one();
            h[i] = -lower[i];
            g[(n + i, i)] = S::one();
            h[n + i] = upper[i];
        }
        let interior = DenseVector::from_fn(n, |i| (lower[i] + upper[i]) * S::of(0.5));
        Ok(Self {
            n,
            reg_eps,
            ineq_g: g,
            ineq_h: h,
            tag: ProblemTag::Generic,
            interior,
        })
    }

    pub fn from_spec(spec: &ProgramSpec) -> Result<Self> {
        match spec {
            ProgramSpec::Newsvendor {
                t1,
                t2,
                s1,
                s2,
                reg_eps,
                ..
            } => Self::newsvendor(
                S::of(*t1),
                S::of(*t2),
                &DenseVector::from_fn(s1.len(), |i| S::of(s1[i])),
                &DenseVector::from_fn(s2.len(), |i| S::of(s2[i])),
                S::of(*reg_eps),
            ),
            ProgramSpec::Matching {
                players,
                s,
                reg_eps,
            } => Self::matching(*players, S::of(*s), S::of(*reg_eps)),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_constraints(&self) -> usize {
        self.ineq_g.rows()
    }

    /// Dimension of the KKT sensitivity system, `n + m`.
    pub fn kkt_dim(&self) -> usize {
        self.n + self.num_constraints()
    }

    pub fn reg_eps(&self) -> S {
        self.reg_eps
    }

    pub fn ineq_g(&self) -> &DenseMatrix<S> {
        &self.ineq_g
    }

    pub fn ineq_h(&self) -> &DenseVector<S> {
        &self.ineq_h
    }

    pub fn tag(&self) -> ProblemTag {
        self.tag
    }

    /// Feasible point cached at construction.
    pub fn interior_point(&self) -> &DenseVector<S> {
        &self.interior
    }

    pub fn objective(&self, c: &DenseVector<S>, x: &DenseVector<S>) -> S {
        c.dot(x) + self.reg_eps * x.dot(x)
    }

    /// Gradient of the objective in `x`: `c + 2 reg_eps x`.
    pub fn objective_gradient(&self, c: &DenseVector<S>, x: &DenseVector<S>) -> DenseVector<S> {
        let mut g = x.scale(S::of(2.0) * self.reg_eps);
        g.axpy(S::one(), c);
        g
    }

    /// Largest constraint violation at `x` (negative means strictly inside).
    pub fn max_violation(&self, x: &DenseVector<S>) -> S {
        let gx = self.ineq_g.matvec(x);
        (0..self.num_constraints()).fold(S::neg_infinity(), |acc, i| {
            acc.max(gx[i] - self.ineq_h[i])
        })
    }
}

fn newsvendor_center<S: Scalar>(
    t1: S,
    t2: S,
    s1: &DenseVector<S>,
    s2: &DenseVector<S>,
) -> DenseVector<S> {
    let n = s1.len();
    let mid = DenseVector::from_fn(n, |i| (s1[i] + s2[i]) * S::of(0.5));
    let total = mid.sum();
    // pull the total-order sum strictly inside [t1, t2] where possible
    let margin = (t2 - t1) * S::of(0.25);
    let target = if total < t1 + margin {
        t1 + margin
    } else if total > t2 - margin {
        t2 - margin
    } else {
        total
    };
    if target > total {
        let room = s2.sum() - total;
        if room > S::zero() {
            let t = ((target - total) / room).min(S::one());
            return DenseVector::from_fn(n, |i| mid[i] + t * (s2[i] - mid[i]));
        }
    } else if target < total {
        let room = total - s1.sum();
        if room > S::zero() {
            let t = ((total - target) / room).min(S::one());
            return DenseVector::from_fn(n, |i| mid[i] - t * (mid[i] - s1[i]));
        }
    }
    mid
}

/// JSON-facing program description.
///
/// ```json
/// {"tag":"newsvendor","n":10,"T1":20.0,"T2":30.0,"s1":[...],"s2":[...],"reg_eps":0.25}
/// {"tag":"matching","players":4,"S":3.0,"reg_eps":0.01}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum ProgramSpec {
    Newsvendor {
        n: usize,
        #[serde(rename = "T1")]
        t1: f64,
        #[serde(rename = "T2")]
        t2: f64,
        s1: Vec<f64>,
        s2: Vec<f64>,
        reg_eps: f64,
    },
    Matching {
        players: usize,
        #[serde(rename = "S")]
        s: f64,
        reg_eps: f64,
    },
}

impl ProgramSpec {
    pub fn decision_dim(&self) -> usize {
        match self {
            ProgramSpec::Newsvendor { n, .. } => *n,
            ProgramSpec::Matching { players, .. } => players * players,
        }
    }

    pub fn reg_eps(&self) -> f64 {
        match self {
            ProgramSpec::Newsvendor { reg_eps, .. } | ProgramSpec::Matching { reg_eps, .. } => {
                *reg_eps
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ProgramSpec::Newsvendor { n, s1, s2, .. } = self {
            if s1.len() != *n || s2.len() != *n {
                return Err(Error::Config(format!(
                    "program spec: s1/s2 must have length n = {n}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newsvendor_kkt_dimensions() {
        for (n, expected) in [(10usize, 32usize), (50, 152), (100, 302)] {
            let s1 = DenseVector::zeros(n);
            let s2 = DenseVector::filled(n, 4.0);
            let p =
                ConvexProgram::newsvendor(1.0, 2.0 * n as f64, &s1, &s2, 1e-2).unwrap();
            assert_eq!(p.kkt_dim(), expected);
            assert_eq!(p.num_constraints(), 2 + 2 * n);
        }
    }

    #[test]
    fn matching_kkt_dimensions() {
        for (p, expected) in [(4usize, 57usize), (15, 706), (30, 2761)] {
            let prog = ConvexProgram::matching(p, 1.0, 1e-2).unwrap();
            assert_eq!(prog.kkt_dim(), expected);
            assert_eq!(prog.dim(), p * p);
            assert_eq!(prog.num_constraints(), 2 * p + 1 + 2 * p * p);
        }
    }

    #[test]
    fn newsvendor_feasibility_witness() {
        let s1 = DenseVector::zeros(2);
        let s2 = DenseVector::filled(2, 1.0);
        let p = ConvexProgram::newsvendor(1.0, 2.0, &s1, &s2, 1e-2).unwrap();
        assert!(p.max_violation(p.interior_point()) <= 0.0);
        // explicit witness from the construction contract
        let w = DenseVector::from_vec(vec![0.5, 0.5]);
        assert!(p.max_violation(&w) <= 1e-12);
    }

    #[test]
    fn infeasible_specs_rejected() {
        let s1 = DenseVector::filled(3, 2.0);
        let s2 = DenseVector::filled(3, 3.0);
        // sum of minimum orders 6 > T2 = 5
        assert!(matches!(
            ConvexProgram::newsvendor(1.0, 5.0, &s1, &s2, 1e-2),
            Err(Error::InfeasibleSpec(_))
        ));
        // T1 > T2
        assert!(matches!(
            ConvexProgram::newsvendor(4.0, 2.0, &s1, &s2, 1e-2),
            Err(Error::InfeasibleSpec(_))
        ));
        assert!(matches!(
            ConvexProgram::<f64>::matching(3, 5.0, 1e-2),
            Err(Error::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn matching_interior_point_is_feasible() {
        for (p, s) in [(2usize, 1.0), (4, 3.0), (4, 0.0)] {
            let prog = ConvexProgram::matching(p, s, 1e-2).unwrap();
            assert!(
                prog.max_violation(prog.interior_point()) <= 0.0,
                "players {p} floor {s}"
            );
        }
    }

    #[test]
    fn program_spec_round_trips_through_json() {
        let spec = ProgramSpec::Newsvendor {
            n: 3,
            t1: 1.0,
            t2: 4.0,
            s1: vec![0.0; 3],
            s2: vec![2.0; 3],
            reg_eps: 0.1,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"tag\":\"newsvendor\""));
        assert!(json.contains("\"T1\""));
        let back: ProgramSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);

        let spec = ProgramSpec::Matching {
            players: 4,
            s: 3.0,
            reg_eps: 0.01,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: ProgramSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }
}
