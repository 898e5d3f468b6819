//! Root and weight combinatorics for U_q[osp(m|n)]: the graded index set
//! in its total order, conjugation, signs, the invariant bilinear form,
//! simple roots and the graded half-sum rho.
//!
//! The flattened order places all delta weights above all epsilon weights,
//! delta_1 highest:
//! `delta_1 > ... > delta_k > eps_1 > ... > eps_l > (0) > -eps_l > ... > -delta_1`,
//! the middle zero-weight index existing exactly when m is odd. This is
//! forced by `delta_k - eps_1` being a (simple) positive root.

use num::rational::Rational64;
use num::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDataError {
    #[error("invalid algebra parameters: {0}")]
    InvalidParams(String),
    #[error("mismatched weight dimensions")]
    DimensionMismatch,
    #[error("cannot parse weight: {0}")]
    WeightParse(String),
}

/// Parameters of U_q[osp(m|n)]: m > 2 and n even, n >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraParams {
    m: usize,
    n: usize,
}

impl AlgebraParams {
    pub fn new(m: usize, n: usize) -> Result<Self, RootDataError> {
        if m <= 2 {
            return Err(RootDataError::InvalidParams(
                "m must exceed 2".to_string(),
            ));
        }
        if n < 2 || n % 2 != 0 {
            return Err(RootDataError::InvalidParams(
                "n must be even and at least 2".to_string(),
            ));
        }
        Ok(AlgebraParams { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// l = floor(m/2): number of independent epsilon weights.
    pub fn l(&self) -> usize {
        self.m / 2
    }

    /// k = n/2: number of independent delta weights.
    pub fn k(&self) -> usize {
        self.n / 2
    }

    pub fn m_odd(&self) -> bool {
        self.m % 2 == 1
    }

    /// Dimension of the vector representation.
    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Number of epsilon coordinate slots (explicit zero slot for odd m).
    fn eps_slots(&self) -> usize {
        self.l() + usize::from(self.m_odd())
    }
}

/// A weight: exact rational coordinates over `{eps_1..eps_l(,0), delta_1..delta_k}`.
///
/// For odd m the epsilon vector carries an explicit final slot that is
/// always zero, keeping index -> weight a total function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub eps: Vec<Rational64>,
    pub delta: Vec<Rational64>,
}

impl Weight {
    pub fn zero(p: &AlgebraParams) -> Self {
        Weight {
            eps: vec![Rational64::zero(); p.eps_slots()],
            delta: vec![Rational64::zero(); p.k()],
        }
    }

    /// Basis weight eps_i, 1 <= i <= l.
    pub fn eps_unit(p: &AlgebraParams, i: usize) -> Self {
        assert!(i >= 1 && i <= p.l(), "eps index out of range");
        let mut w = Self::zero(p);
        w.eps[i - 1] = Rational64::one();
        w
    }

    /// Basis weight delta_mu, 1 <= mu <= k.
    pub fn delta_unit(p: &AlgebraParams, mu: usize) -> Self {
        assert!(mu >= 1 && mu <= p.k(), "delta index out of range");
        let mut w = Self::zero(p);
        w.delta[mu - 1] = Rational64::one();
        w
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().all(|c| c.is_zero()) && self.delta.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.eps.len(), other.eps.len());
        debug_assert_eq!(self.delta.len(), other.delta.len());
        Weight {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a + b)
                .collect(),
            delta: self
                .delta
                .iter()
                .zip(&other.delta)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-Rational64::one())
    }

    pub fn scale(&self, c: Rational64) -> Weight {
        Weight {
            eps: self.eps.iter().map(|x| x * c).collect(),
            delta: self.delta.iter().map(|x| x * c).collect(),
        }
    }

    /// Parse "e:c1,c2|d:c1,..." with exactly l epsilon and k delta
    /// coordinates, each an integer or `p/q` rational.
    pub fn parse(p: &AlgebraParams, s: &str) -> Result<Weight, RootDataError> {
        let err = |msg: &str| RootDataError::WeightParse(msg.to_string());
        let mut parts = s.split('|');
        let e_part = parts.next().ok_or_else(|| err("missing 'e:' part"))?;
        let d_part = parts.next().ok_or_else(|| err("missing 'd:' part"))?;
        if parts.next().is_some() {
            return Err(err("too many '|' separators"));
        }
        let e_body = e_part
            .trim()
            .strip_prefix("e:")
            .ok_or_else(|| err("epsilon part must start with 'e:'"))?;
        let d_body = d_part
            .trim()
            .strip_prefix("d:")
            .ok_or_else(|| err("delta part must start with 'd:'"))?;
        let parse_coords = |body: &str| -> Result<Vec<Rational64>, RootDataError> {
            body.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let (ns, ds) = match tok.split_once('/') {
                        Some((a, b)) => (a, b),
                        None => (tok, "1"),
                    };
                    let n: i64 = ns
                        .trim()
                        .parse()
                        .map_err(|_| err(&format!("bad coordinate '{tok}'")))?;
                    let d: i64 = ds
                        .trim()
                        .parse()
                        .map_err(|_| err(&format!("bad coordinate '{tok}'")))?;
                    if d == 0 {
                        return Err(err("zero denominator"));
                    }
                    Ok(Rational64::new(n, d))
                })
                .collect()
        };
        let eps = parse_coords(e_body)?;
        let delta = parse_coords(d_body)?;
        if eps.len() != p.l() {
            return Err(err(&format!(
                "expected {} epsilon coordinates, found {}",
                p.l(),
                eps.len()
            )));
        }
        if delta.len() != p.k() {
            return Err(err(&format!(
                "expected {} delta coordinates, found {}",
                p.k(),
                delta.len()
            )));
        }
        let mut w = Weight { eps, delta };
        if p.m_odd() {
            w.eps.push(Rational64::zero());
        }
        Ok(w)
    }

    /// Inverse of [`Weight::parse`] (omits the internal zero slot).
    pub fn render(&self, p: &AlgebraParams) -> String {
        let fmt_c = |c: &Rational64| {
            if c.denom() == &1 {
                format!("{}", c.numer())
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        };
        let eps: Vec<String> = self.eps.iter().take(p.l()).map(fmt_c).collect();
        let delta: Vec<String> = self.delta.iter().map(fmt_c).collect();
        format!("e:{}|d:{}", eps.join(","), delta.join(","))
    }
}

/// The invariant bilinear form: +1 on the epsilon block, -1 on delta.
pub fn bilinear_form(x: &Weight, y: &Weight) -> Result<Rational64, RootDataError> {
    if x.eps.len() != y.eps.len() || x.delta.len() != y.delta.len() {
        return Err(RootDataError::DimensionMismatch);
    }
    let mut acc = Rational64::zero();
    for (a, b) in x.eps.iter().zip(&y.eps) {
        acc += a * b;
    }
    for (a, b) in x.delta.iter().zip(&y.delta) {
        acc -= a * b;
    }
    Ok(acc)
}

/// Label of a simple root: `Eps(i)` for alpha_i (1 <= i <= l, alpha_l
/// being the tail root of the orthogonal sector), `Delta(mu)` for
/// alpha_mu (1 <= mu < k), `Odd` for alpha_s = delta_k - eps_1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimpleLabel {
    Delta(usize),
    Odd,
    Eps(usize),
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLabel::Eps(i) => write!(f, "alpha_e{i}"),
            SimpleLabel::Delta(mu) => write!(f, "alpha_d{mu}"),
            SimpleLabel::Odd => write!(f, "alpha_s"),
        }
    }
}

/// Family and label of a basis index of the vector representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Even (orthogonal) index i, 1 <= i <= m.
    Even(usize),
    /// Odd (symplectic) index mu, 1 <= mu <= n.
    Odd(usize),
}

/// One basis index in the flattened total order.
#[derive(Debug, Clone)]
pub struct GradedIndex {
    /// 1-based position in decreasing-weight order.
    pub position: usize,
    pub family: Family,
    /// Z_2 grading: 0 for even family, 1 for odd.
    pub grading: u8,
    /// Sign xi: +1 on the even family, (-1)^mu on the odd family.
    pub xi: i64,
    pub weight: Weight,
    /// Position of the conjugate index.
    pub conj: usize,
}

impl GradedIndex {
    /// Short display name, e.g. "d1", "e2", "e0" (middle), "-e1", "-d1".
    pub fn name(&self, p: &AlgebraParams) -> String {
        match self.family {
            Family::Even(i) => {
                let l = p.l();
                if p.m_odd() && i == l + 1 {
                    "e0".to_string()
                } else if i <= l {
                    format!("e{i}")
                } else {
                    format!("-e{}", p.m() + 1 - i)
                }
            }
            Family::Odd(mu) => {
                if mu <= p.k() {
                    format!("d{mu}")
                } else {
                    format!("-d{}", p.n() + 1 - mu)
                }
            }
        }
    }
}

/// The full combinatorial datum for one (m, n): index order, rho, simple roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    params: AlgebraParams,
    indices: Vec<GradedIndex>,
    rho: Weight,
    simple: Vec<(SimpleLabel, Weight)>,
}

impl RootSystem {
    pub fn new(params: AlgebraParams) -> Self {
        let indices = flatten_order(&params);
        let rho = rho(&params);
        let simple = simple_roots(&params);
        RootSystem {
            params,
            indices,
            rho,
            simple,
        }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// All indices in flattened (decreasing-weight) order.
    pub fn indices(&self) -> &[GradedIndex] {
        &self.indices
    }

    /// 1-based access.
    pub fn index(&self, position: usize) -> &GradedIndex {
        &self.indices[position - 1]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn two_rho(&self) -> Weight {
        self.rho.scale(Rational64::from_integer(2))
    }

    pub fn simple_roots(&self) -> &[(SimpleLabel, Weight)] {
        &self.simple
    }

    pub fn simple_root(&self, label: SimpleLabel) -> &Weight {
        &self
            .simple
            .iter()
            .find(|(l, _)| *l == label)
            .expect("unknown simple root label")
            .1
    }

    /// C(Lambda_0) = (delta_1, delta_1 + 2 rho) = m - n - 1.
    pub fn casimir_shift(&self) -> i64 {
        self.params.m() as i64 - self.params.n() as i64 - 1
    }

    /// (2 rho, eps_a) for the index at `position`.
    pub fn two_rho_dot(&self, position: usize) -> Rational64 {
        bilinear_form(&self.two_rho(), &self.index(position).weight)
            .expect("internal weight shapes agree")
    }

    /// Basis grading vector for graded linear algebra on V.
    pub fn gradings(&self) -> Vec<u8> {
        self.indices.iter().map(|ix| ix.grading).collect()
    }

    /// Position of the zero-weight middle index (odd m only).
    pub fn middle(&self) -> Option<usize> {
        if self.params.m_odd() {
            Some(self.params.k() + self.params.l() + 1)
        } else {
            None
        }
    }

    /// Highest weight of the vector representation: delta_1.
    pub fn vector_hw(&self) -> Weight {
        Weight::delta_unit(&self.params, 1)
    }
}

/// All m+n indices in strictly decreasing weight order.
pub fn flatten_order(p: &AlgebraParams) -> Vec<GradedIndex> {
    let (m, n, l, k) = (p.m(), p.n(), p.l(), p.k());
    let dim = m + n;
    let mut out = Vec::with_capacity(dim);
    // delta_1 .. delta_k
    for mu in 1..=k {
        out.push((Family::Odd(mu), Weight::delta_unit(p, mu)));
    }
    // eps_1 .. eps_l, middle, -eps_l .. -eps_1 (even labels 1..m in order)
    for i in 1..=m {
        let w = if i <= l {
            Weight::eps_unit(p, i)
        } else if p.m_odd() && i == l + 1 {
            Weight::zero(p)
        } else {
            Weight::eps_unit(p, m + 1 - i).neg()
        };
        out.push((Family::Even(i), w));
    }
    // -delta_k .. -delta_1 (odd labels k+1..n)
    for mu in (k + 1)..=n {
        out.push((Family::Odd(mu), Weight::delta_unit(p, n + 1 - mu).neg()));
    }
    out.into_iter()
        .enumerate()
        .map(|(idx, (family, weight))| {
            let position = idx + 1;
            let (grading, xi) = match family {
                Family::Even(_) => (0u8, 1i64),
                Family::Odd(mu) => (1u8, if mu % 2 == 0 { 1 } else { -1 }),
            };
            GradedIndex {
                position,
                family,
                grading,
                xi,
                weight,
                conj: dim + 1 - position,
            }
        })
        .collect()
}

/// The chosen simple roots (valid for m > 2): alpha_i = eps_i - eps_{i+1}
/// for i < l; alpha_l = eps_{l-1} + eps_l (m even) or eps_l (m odd);
/// alpha_mu = delta_mu - delta_{mu+1} for mu < k; alpha_s = delta_k - eps_1.
pub fn simple_roots(p: &AlgebraParams) -> Vec<(SimpleLabel, Weight)> {
    let (l, k) = (p.l(), p.k());
    let mut out = Vec::with_capacity(l + k);
    for i in 1..l {
        out.push((
            SimpleLabel::Eps(i),
            Weight::eps_unit(p, i).sub(&Weight::eps_unit(p, i + 1)),
        ));
    }
    let alpha_l = if p.m_odd() {
        Weight::eps_unit(p, l)
    } else {
        Weight::eps_unit(p, l - 1).add(&Weight::eps_unit(p, l))
    };
    out.push((SimpleLabel::Eps(l), alpha_l));
    for mu in 1..k {
        out.push((
            SimpleLabel::Delta(mu),
            Weight::delta_unit(p, mu).sub(&Weight::delta_unit(p, mu + 1)),
        ));
    }
    out.push((
        SimpleLabel::Odd,
        Weight::delta_unit(p, k).sub(&Weight::eps_unit(p, 1)),
    ));
    out
}

/// rho = 1/2 sum_i (m-2i) eps_i + 1/2 sum_mu (n-m+2-2mu) delta_mu.
pub fn rho(p: &AlgebraParams) -> Weight {
    let mut w = Weight::zero(p);
    let (m, n) = (p.m() as i64, p.n() as i64);
    for i in 1..=p.l() {
        w.eps[i - 1] = Rational64::new(m - 2 * i as i64, 2);
    }
    for mu in 1..=p.k() {
        w.delta[mu - 1] = Rational64::new(n - m + 2 - 2 * mu as i64, 2);
    }
    w
}
