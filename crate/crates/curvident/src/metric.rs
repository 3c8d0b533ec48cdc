//! Metric jets and their curvature.
//!
//! A [`MetricJet`] is a truncated Taylor expansion of a pseudo-Riemannian
//! metric at a base point: one polynomial of total degree `<= degree` per
//! symmetric component pair, with exact rational coefficients. Christoffel
//! symbols are polynomial manipulations, and the curvature tensors are exact
//! values at the base point, so statements like "the Einstein tensor of this
//! surface vanishes" are decided by literal equality of rationals.
//!
//! Conventions:
//! * `Gamma^i_{jk} = (1/2) g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk})`
//! * `R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//!    + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}`
//! * `riemann` returns the fully covariant value at the origin, lowered with
//!   `g(0)`; `ricci` traces its first and third slots.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{monomials, Poly};
use crate::rng::SplitMix64;
use crate::scalar::{int, rat, Rational};
use crate::tensor::{invert_symmetric, Tensor, Variance};

fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Packed index of the unordered pair `(a, b)` in row order.
fn pack(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + b
}

/// Truncated Taylor expansion of a metric at a base point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet {
    dim: usize,
    degree: usize,
    signature: (usize, usize),
    // Packed symmetric components g_{ab}, a <= b.
    comps: Vec<Poly>,
}

/// Inverse metric as polynomials: contravariant components `g^{ab}` with
/// `g g^{-1} = Id` up to the truncation degree.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMetricJet {
    dim: usize,
    degree: usize,
    comps: Vec<Poly>,
}

/// Christoffel symbols `Gamma^i_{jk}` as polynomials of degree `<= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelJet {
    dim: usize,
    degree: usize,
    // symbols[i * pair_count + pack(j, k)]
    symbols: Vec<Poly>,
}

impl MetricJet {
    /// Builds a jet from packed symmetric components and validates that the
    /// constant term is nonsingular with the declared signature.
    pub fn new(
        dim: usize,
        degree: usize,
        signature: (usize, usize),
        comps: Vec<Poly>,
    ) -> Result<Self> {
        if signature.0 + signature.1 != dim {
            return Err(Error::InvalidSignature(signature.0, signature.1));
        }
        if comps.len() != pair_count(dim) {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                pair_count(dim),
                comps.len()
            )));
        }
        let comps: Vec<Poly> = comps.iter().map(|p| p.truncate(degree)).collect();
        let jet = Self {
            dim,
            degree,
            signature,
            comps,
        };
        let g0 = Matrix::from_fn(dim, dim, |a, b| jet.component(a, b).eval_zero());
        let (pos, neg, zero) = g0.inertia()?;
        if zero != 0 {
            return Err(Error::SingularMetric);
        }
        if (pos, neg) != signature {
            return Err(Error::InvalidSignature(signature.0, signature.1));
        }
        Ok(jet)
    }

    /// Flat jet: `g(0) = diag(+1 .. +1, -1 .. -1)` and no higher terms.
    pub fn flat(dim: usize, signature: (usize, usize), degree: usize) -> Result<Self> {
        if signature.0 + signature.1 != dim {
            return Err(Error::InvalidSignature(signature.0, signature.1));
        }
        let mut comps = vec![Poly::zero(dim, degree); pair_count(dim)];
        for a in 0..dim {
            let sign = if a < signature.0 { 1 } else { -1 };
            comps[pack(dim, a, a)] = Poly::constant(dim, degree, int(sign));
        }
        Self::new(dim, degree, signature, comps)
    }

    /// Deterministic random jet: pseudo-orthonormal constant term, and one
    /// small random rational (numerator in `[-9, 9]`, denominator 10) per
    /// symmetric pair and monomial of degree `1..=degree`.
    pub fn random(dim: usize, signature: (usize, usize), degree: usize, seed: u64) -> Result<Self> {
        if degree < 2 {
            return Err(Error::DegreeTooLow {
                got: degree,
                need: 2,
            });
        }
        let mut jet = Self::flat(dim, signature, degree)?;
        let mut rng = SplitMix64::substream(seed, 0x006a_6574);
        let monos = monomials(dim, 1, degree);
        for a in 0..dim {
            for b in a..dim {
                let idx = pack(dim, a, b);
                for expo in &monos {
                    jet.comps[idx].add_term(expo.clone(), rng.small_rational());
                }
            }
        }
        Ok(jet)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn component(&self, a: usize, b: usize) -> &Poly {
        &self.comps[pack(self.dim, a, b)]
    }

    /// Constant-term matrix `g(0)`.
    pub fn constant_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| self.component(a, b).eval_zero())
                    .collect()
            })
            .collect()
    }

    /// `g(0)` as a 2-slot covariant tensor.
    pub fn metric_at_origin(&self) -> Tensor {
        Tensor::from_matrix(self.dim, Variance::Covariant, &self.constant_matrix())
            .expect("constant matrix is square")
    }

    /// Inverse metric, computed order by order: with `g = G0 + B`,
    /// `g^{-1} = sum_j (-G0^{-1} B)^j G0^{-1}` truncated at the jet degree.
    pub fn inverse(&self) -> Result<InverseMetricJet> {
        let n = self.dim;
        let g0 = self.constant_matrix();
        let g0_inv = invert_symmetric(n, |i, j| g0[i][j].clone())?;
        let h: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Poly::constant(n, self.degree, g0_inv[i][j].clone()))
                    .collect()
            })
            .collect();
        let b: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = self.component(i, j).clone();
                        p.add_term(vec![0; n], -self.component(i, j).eval_zero());
                        p
                    })
                    .collect()
            })
            .collect();
        let minus_hb = mat_scale(&mat_mul(&h, &b), &int(-1));
        let mut result = h.clone();
        let mut power = minus_hb.clone();
        for _ in 1..=self.degree {
            let term = mat_mul(&power, &h);
            result = mat_add(&result, &term);
            power = mat_mul(&minus_hb, &power);
        }
        let mut comps = Vec::with_capacity(pair_count(n));
        for a in 0..n {
            for b in a..n {
                debug_assert_eq!(result[a][b], result[b][a]);
                comps.push(result[a][b].clone());
            }
        }
        Ok(InverseMetricJet {
            dim: n,
            degree: self.degree,
            comps,
        })
    }

    /// Levi-Civita connection symbols, exact polynomials of degree
    /// `<= degree - 1`.
    pub fn christoffel(&self) -> Result<ChristoffelJet> {
        if self.degree < 1 {
            return Err(Error::DegreeTooLow {
                got: self.degree,
                need: 1,
            });
        }
        let n = self.dim;
        let ginv = self.inverse()?;
        let mut dg = vec![Poly::zero(n, self.degree - 1); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    dg[(a * n + b) * n + c] = self.component(a, b).partial(c);
                }
            }
        }
        let half = rat(1, 2);
        let mut symbols = vec![Poly::zero(n, self.degree - 1); n * pair_count(n)];
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let mut acc = Poly::zero(n, self.degree - 1);
                    for l in 0..n {
                        let sum = dg[(l * n + k) * n + j]
                            .add(&dg[(l * n + j) * n + k])
                            .sub(&dg[(j * n + k) * n + l]);
                        acc = acc.add(&ginv.component(i, l).mul(&sum));
                    }
                    symbols[i * pair_count(n) + pack(n, j, k)] = acc.scale(&half);
                }
            }
        }
        Ok(ChristoffelJet {
            dim: n,
            degree: self.degree - 1,
            symbols,
        })
    }

    /// Fully covariant Riemann tensor at the base point.
    pub fn riemann(&self) -> Result<Tensor> {
        if self.degree < 2 {
            return Err(Error::DegreeTooLow {
                got: self.degree,
                need: 2,
            });
        }
        let n = self.dim;
        let gamma = self.christoffel()?;
        let mut gamma0 = vec![Rational::zero(); n * n * n];
        let mut dgamma0 = vec![Rational::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = gamma.symbol(i, j, k);
                    gamma0[(i * n + j) * n + k] = s.eval_zero();
                    for c in 0..n {
                        dgamma0[((i * n + j) * n + k) * n + c] = s.partial(c).eval_zero();
                    }
                }
            }
        }
        let up = |i: usize, j: usize, k: usize, l: usize| -> Rational {
            let mut v = dgamma0[((i * n + l) * n + j) * n + k].clone()
                - dgamma0[((i * n + k) * n + j) * n + l].clone();
            for m in 0..n {
                v += &gamma0[(i * n + k) * n + m] * &gamma0[(m * n + l) * n + j];
                v -= &gamma0[(i * n + l) * n + m] * &gamma0[(m * n + k) * n + j];
            }
            v
        };
        let g0 = self.constant_matrix();
        Tensor::from_fn(n, vec![Variance::Covariant; 4], |idx| {
            let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
            let mut v = Rational::zero();
            for i in 0..n {
                if g0[a][i].is_zero() {
                    continue;
                }
                v += &g0[a][i] * &up(i, b, c, d);
            }
            v
        })
    }

    /// Ricci tensor: trace of the first and third Riemann slots.
    pub fn ricci(&self) -> Result<Tensor> {
        self.riemann()?.contract(0, 2, &self.metric_at_origin())
    }

    /// Scalar curvature: full metric trace of the Ricci tensor.
    pub fn scalar_curvature(&self) -> Result<Rational> {
        let r = self.ricci()?.contract(0, 1, &self.metric_at_origin())?;
        Ok(r.scalar_value()?.clone())
    }

    /// Einstein tensor `Ricc - (r/2) g(0)`.
    pub fn einstein(&self) -> Result<Tensor> {
        let ricci = self.ricci()?;
        let half_r = self.scalar_curvature()? * rat(1, 2);
        ricci.sub(&self.metric_at_origin().scale(&half_r))
    }

    /// Block extension by one flat coordinate: the original components do not
    /// depend on the new variable, `g_{nn} = 1`, and the mixed terms vanish.
    pub fn cylinder_extend(&self) -> Self {
        let n = self.dim + 1;
        let mut comps = vec![Poly::zero(n, self.degree); pair_count(n)];
        for a in 0..self.dim {
            for b in a..self.dim {
                comps[pack(n, a, b)] = self.component(a, b).extend_vars(1);
            }
        }
        comps[pack(n, n - 1, n - 1)] = Poly::constant(n, self.degree, int(1));
        Self {
            dim: n,
            degree: self.degree,
            signature: (self.signature.0 + 1, self.signature.1),
            comps,
        }
    }

    /// All coefficients multiplied by `factor` (which must be positive, so the
    /// signature is preserved).
    pub fn rescale(&self, factor: &Rational) -> Result<Self> {
        if factor <= &Rational::zero() {
            return Err(Error::InvalidArgument(
                "rescale factor must be positive".into(),
            ));
        }
        let comps = self.comps.iter().map(|p| p.scale(factor)).collect();
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            signature: self.signature,
            comps,
        })
    }

    /// Coordinate change by a signed permutation `x_{perm(j)} = signs_j y_j`.
    /// The permutation must preserve the signature blocks for the result to
    /// validate.
    pub fn apply_signed_permutation(&self, perm: &[usize], signs: &[i8]) -> Result<Self> {
        let n = self.dim;
        if perm.len() != n || signs.len() != n {
            return Err(Error::InvalidArgument(
                "permutation and signs must have one entry per coordinate".into(),
            ));
        }
        // The substitution x_a -> signs[inv(a)] * y_{inv(a)}
        let mut inv = vec![0usize; n];
        for (j, &img) in perm.iter().enumerate() {
            inv[img] = j;
        }
        let subst_perm: Vec<usize> = (0..n).map(|a| inv[a]).collect();
        let subst_signs: Vec<i8> = (0..n).map(|a| signs[inv[a]]).collect();
        let mut comps = vec![Poly::zero(n, self.degree); pair_count(n)];
        for c in 0..n {
            for d in c..n {
                let pulled = self
                    .component(perm[c], perm[d])
                    .substitute_signed_permutation(&subst_perm, &subst_signs);
                let sign = int(i64::from(signs[c]) * i64::from(signs[d]));
                comps[pack(n, c, d)] = pulled.scale(&sign);
            }
        }
        Self::new(n, self.degree, self.signature, comps)
    }

    pub fn to_document(&self) -> JetDocument {
        let mut coefficients = Vec::new();
        for a in 0..self.dim {
            for b in a..self.dim {
                for (expo, coeff) in self.component(a, b).terms() {
                    coefficients.push(JetCoefficient {
                        indices: [a, b],
                        exponents: expo.clone(),
                        numerator: coeff.numer().to_string(),
                        denominator: coeff.denom().to_string(),
                    });
                }
            }
        }
        JetDocument {
            dim: self.dim,
            degree: self.degree,
            signature: [self.signature.0, self.signature.1],
            coefficients,
        }
    }

    pub fn from_document(doc: &JetDocument) -> Result<Self> {
        let n = doc.dim;
        let mut comps = vec![Poly::zero(n, doc.degree); pair_count(n)];
        for c in &doc.coefficients {
            let [a, b] = c.indices;
            if a >= n || b >= n || a > b {
                return Err(Error::InvalidArgument(format!(
                    "bad component indices [{a}, {b}]"
                )));
            }
            if c.exponents.len() != n {
                return Err(Error::InvalidArgument(
                    "exponent vector length must equal the dimension".into(),
                ));
            }
            let numer: BigInt = c
                .numerator
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad numerator {:?}", c.numerator)))?;
            let denom: BigInt = c.denominator.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad denominator {:?}", c.denominator))
            })?;
            if denom.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            comps[pack(n, a, b)].add_term(c.exponents.clone(), Rational::new(numer, denom));
        }
        Self::new(n, doc.degree, (doc.signature[0], doc.signature[1]), comps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("jet document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JetDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

impl InverseMetricJet {
    pub fn component(&self, a: usize, b: usize) -> &Poly {
        &self.comps[pack(self.dim, a, b)]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| self.component(a, b).eval_zero())
                    .collect()
            })
            .collect()
    }
}

impl ChristoffelJet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `Gamma^i_{jk}`, symmetric in `(j, k)`.
    pub fn symbol(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.symbols[i * pair_count(self.dim) + pack(self.dim, j, k)]
    }
}

/// Restriction to the hyperplane spanned by the first `n - 1` coordinates:
/// keeps the components whose indices all stay below `n - 1`. All slots must
/// be covariant.
pub fn restrict(t: &Tensor) -> Result<Tensor> {
    if t.slots().iter().any(|&v| v != Variance::Covariant) {
        return Err(Error::MixedVariance);
    }
    if t.dim() < 2 {
        return Err(Error::InvalidArgument(
            "cannot restrict a 1-dimensional tensor".into(),
        ));
    }
    Tensor::from_fn(t.dim() - 1, t.slots().to_vec(), |idx| t.get(idx).clone())
}

/// On-disk jet format: one record per nonzero coefficient, with exact
/// numerator/denominator strings. Round-trips bit-exactly.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JetDocument {
    pub dim: usize,
    pub degree: usize,
    pub signature: [usize; 2],
    pub coefficients: Vec<JetCoefficient>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JetCoefficient {
    pub indices: [usize; 2],
    pub exponents: Vec<u8>,
    pub numerator: String,
    pub denominator: String,
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = a[i][0].mul(&b[0][j]);
                    for k in 1..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_add(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

fn mat_scale(a: &[Vec<Poly>], factor: &Rational) -> Vec<Vec<Poly>> {
    a.iter()
        .map(|r| r.iter().map(|p| p.scale(factor)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Permutation;

    fn riemannian(n: usize) -> (usize, usize) {
        (n, 0)
    }

    fn lorentzian(n: usize) -> (usize, usize) {
        (n - 1, 1)
    }

    /// Constant-curvature model `g_ab = delta_ab (1 - (kappa/2) |x|^2)`,
    /// the degree-2 truncation of the space form of sectional curvature kappa.
    fn space_form(n: usize, kappa: Rational) -> MetricJet {
        let mut comps = vec![Poly::zero(n, 2); pair_count(n)];
        for a in 0..n {
            let mut p = Poly::constant(n, 2, int(1));
            for c in 0..n {
                let mut expo = vec![0u8; n];
                expo[c] = 2;
                p.add_term(expo, -&kappa * rat(1, 2));
            }
            comps[pack(n, a, a)] = p;
        }
        MetricJet::new(n, 2, (n, 0), comps).unwrap()
    }

    #[test]
    fn degree_below_two_is_rejected() {
        assert!(matches!(
            MetricJet::random(2, riemannian(2), 0, 1),
            Err(Error::DegreeTooLow { .. })
        ));
        assert!(matches!(
            MetricJet::random(2, riemannian(2), 1, 1),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn bad_signature_is_rejected() {
        assert!(matches!(
            MetricJet::random(2, (2, 1), 2, 0),
            Err(Error::InvalidSignature(2, 1))
        ));
    }

    #[test]
    fn flat_jet_has_no_curvature() {
        for n in 1..=4 {
            let jet = MetricJet::flat(n, riemannian(n), 2).unwrap();
            let gamma = jet.christoffel().unwrap();
            for i in 0..n {
                for j in 0..n {
                    for k in j..n {
                        assert!(gamma.symbol(i, j, k).is_zero());
                    }
                }
            }
            assert!(jet.riemann().unwrap().is_zero());
            assert!(jet.einstein().unwrap().is_zero());
        }
    }

    #[test]
    fn same_seed_gives_identical_jets() {
        let a = MetricJet::random(3, riemannian(3), 2, 11).unwrap();
        let b = MetricJet::random(3, riemannian(3), 2, 11).unwrap();
        assert_eq!(a, b);
        let c = MetricJet::random(3, riemannian(3), 2, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_surface_jet_is_generically_curved() {
        let jet = MetricJet::random(2, riemannian(2), 2, 1).unwrap();
        assert!(!jet.scalar_curvature().unwrap().is_zero());
    }

    #[test]
    fn inverse_of_diagonal_series_example() {
        // g = diag(1, 1 + x0): the inverse second component is 1 - x0 + x0^2
        let mut comps = vec![Poly::zero(2, 2); 3];
        comps[pack(2, 0, 0)] = Poly::constant(2, 2, int(1));
        let mut g11 = Poly::constant(2, 2, int(1));
        g11.add_term(vec![1, 0], int(1));
        comps[pack(2, 1, 1)] = g11;
        let jet = MetricJet::new(2, 2, (2, 0), comps).unwrap();
        let inv = jet.inverse().unwrap();
        let expected = {
            let mut p = Poly::constant(2, 2, int(1));
            p.add_term(vec![1, 0], int(-1));
            p.add_term(vec![2, 0], int(1));
            p
        };
        assert_eq!(inv.component(1, 1), &expected);
        assert!(inv.component(0, 1).is_zero());
    }

    #[test]
    fn metric_times_inverse_is_identity_to_truncation() {
        for seed in 0..5 {
            let jet = MetricJet::random(3, lorentzian(3), 3, seed).unwrap();
            let inv = jet.inverse().unwrap();
            for a in 0..3 {
                for b in 0..3 {
                    let mut acc = Poly::zero(3, jet.degree());
                    for c in 0..3 {
                        acc = acc.add(&jet.component(a, c).mul(inv.component(c, b)));
                    }
                    let expected = if a == b {
                        Poly::constant(3, jet.degree(), int(1))
                    } else {
                        Poly::zero(3, jet.degree())
                    };
                    assert_eq!(acc.truncate(jet.degree()), expected);
                }
            }
        }
    }

    #[test]
    fn christoffel_matches_symbolic_derivative_example() {
        // g = diag(1, 1 + 2 x0) in dim 2: Gamma^1_{01} = d_0 g_11 / (2 g_11),
        // which truncates to 1 - 2 x0 at degree 1.
        let mut comps = vec![Poly::zero(2, 2); 3];
        comps[pack(2, 0, 0)] = Poly::constant(2, 2, int(1));
        let mut g11 = Poly::constant(2, 2, int(1));
        g11.add_term(vec![1, 0], int(2));
        comps[pack(2, 1, 1)] = g11;
        let jet = MetricJet::new(2, 2, (2, 0), comps).unwrap();
        let gamma = jet.christoffel().unwrap();
        let expected = {
            let mut p = Poly::constant(2, 1, int(1));
            p.add_term(vec![1, 0], int(-2));
            p
        };
        assert_eq!(gamma.symbol(1, 0, 1), &expected);
    }

    #[test]
    fn christoffel_is_invariant_under_constant_rescaling() {
        let jet = MetricJet::random(3, riemannian(3), 2, 5).unwrap();
        let scaled = jet.rescale(&int(4)).unwrap();
        assert_eq!(jet.christoffel().unwrap(), scaled.christoffel().unwrap());
    }

    #[test]
    fn space_form_scalar_curvature() {
        for n in 2..=4 {
            let kappa = rat(2, 3);
            let jet = space_form(n, kappa.clone());
            let expected = int((n * (n - 1)) as i64) * kappa;
            assert_eq!(jet.scalar_curvature().unwrap(), expected);
        }
    }

    #[test]
    fn riemann_symmetries_hold_exactly() {
        for seed in 0..20 {
            let sig = if seed % 2 == 0 {
                riemannian(3)
            } else {
                lorentzian(3)
            };
            let jet = MetricJet::random(3, sig, 2, seed).unwrap();
            let r = jet.riemann().unwrap();
            let swap01 = r
                .permute_slots(&Permutation::transposition(4, 0, 1).unwrap())
                .unwrap();
            let swap23 = r
                .permute_slots(&Permutation::transposition(4, 2, 3).unwrap())
                .unwrap();
            let pair_swap = r
                .permute_slots(&Permutation::from_images(vec![2, 3, 0, 1]).unwrap())
                .unwrap();
            assert_eq!(swap01, r.neg());
            assert_eq!(swap23, r.neg());
            assert_eq!(pair_swap, r);
            // First Bianchi identity
            assert!(r.antisymmetrize(&[1, 2, 3]).unwrap().is_zero());
        }
    }

    #[test]
    fn ricci_matches_brute_force_trace() {
        for seed in 0..5 {
            let jet = MetricJet::random(3, lorentzian(3), 2, seed).unwrap();
            let r = jet.riemann().unwrap();
            let ricci = jet.ricci().unwrap();
            let g0 = jet.constant_matrix();
            let ginv0 = invert_symmetric(3, |i, j| g0[i][j].clone()).unwrap();
            for b in 0..3 {
                for d in 0..3 {
                    let mut acc = Rational::zero();
                    for a in 0..3 {
                        for c in 0..3 {
                            if ginv0[a][c].is_zero() {
                                continue;
                            }
                            acc += &ginv0[a][c] * r.get(&[a, b, c, d]);
                        }
                    }
                    assert_eq!(&acc, ricci.get(&[b, d]));
                }
            }
        }
    }

    #[test]
    fn einstein_vanishes_on_surfaces_and_not_in_dim_three() {
        for seed in 0..10 {
            for sig in [riemannian(2), lorentzian(2)] {
                let jet = MetricJet::random(2, sig, 2, seed).unwrap();
                assert!(jet.einstein().unwrap().is_zero());
            }
        }
        let witness = (0..10).any(|seed| {
            let jet = MetricJet::random(3, riemannian(3), 2, seed).unwrap();
            !jet.einstein().unwrap().is_zero()
        });
        assert!(witness);
    }

    #[test]
    fn cylinder_extension_is_flat_in_the_new_direction() {
        for seed in 0..5 {
            let base = MetricJet::random(2, riemannian(2), 2, seed).unwrap();
            let cyl = base.cylinder_extend();
            assert_eq!(cyl.dim(), 3);
            assert_eq!(cyl.signature(), (3, 0));
            let r_cyl = cyl.riemann().unwrap();
            for idx in r_cyl.indices() {
                if idx.contains(&2) {
                    assert!(r_cyl.get(&idx).is_zero());
                }
            }
            assert_eq!(restrict(&r_cyl).unwrap(), base.riemann().unwrap());
        }
    }

    #[test]
    fn flat_cylinder_is_flat() {
        let flat = MetricJet::flat(2, riemannian(2), 2).unwrap();
        assert_eq!(
            flat.cylinder_extend(),
            MetricJet::flat(3, riemannian(3), 2).unwrap()
        );
    }

    #[test]
    fn restrict_rejects_contravariant_slots() {
        let d = Tensor::<Rational>::generalized_kronecker(1, 3).unwrap();
        assert!(matches!(restrict(&d), Err(Error::MixedVariance)));
        let z = Tensor::zeros(3, vec![Variance::Covariant; 2]).unwrap();
        assert!(restrict(&z).unwrap().is_zero());
    }

    #[test]
    fn rescaling_weights() {
        let jet = MetricJet::random(3, riemannian(3), 2, 9).unwrap();
        assert_eq!(jet.rescale(&int(1)).unwrap(), jet);
        assert!(jet.rescale(&int(-2)).is_err());
        for lambda2 in [int(4), int(9)] {
            let scaled = jet.rescale(&lambda2).unwrap();
            // weights: r -> lambda^{-2} r, R -> lambda^2 R, Ricc -> Ricc
            assert_eq!(
                scaled.scalar_curvature().unwrap(),
                jet.scalar_curvature().unwrap() / &lambda2
            );
            assert_eq!(
                scaled.riemann().unwrap(),
                jet.riemann().unwrap().scale(&lambda2)
            );
            assert_eq!(scaled.ricci().unwrap(), jet.ricci().unwrap());
        }
    }

    #[test]
    fn equivariance_under_signed_permutations() {
        let jet = MetricJet::random(3, riemannian(3), 2, 4).unwrap();
        let perm = [2usize, 0, 1];
        let signs = [1i8, -1, 1];
        let moved = jet.apply_signed_permutation(&perm, &signs).unwrap();
        let r = jet.riemann().unwrap();
        let r_moved = moved.riemann().unwrap();
        for idx in r_moved.indices() {
            let src: Vec<usize> = idx.iter().map(|&c| perm[c]).collect();
            let mut sign = 1i64;
            for &c in &idx {
                sign *= i64::from(signs[c]);
            }
            assert_eq!(r_moved.get(&idx), &(r.get(&src) * int(sign)));
        }
        let e = jet.einstein().unwrap();
        let e_moved = moved.einstein().unwrap();
        for idx in e_moved.indices() {
            let src: Vec<usize> = idx.iter().map(|&c| perm[c]).collect();
            let sign = i64::from(signs[idx[0]]) * i64::from(signs[idx[1]]);
            assert_eq!(e_moved.get(&idx), &(e.get(&src) * int(sign)));
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        for seed in 0..5 {
            let jet = MetricJet::random(3, lorentzian(3), 2, seed).unwrap();
            let text = jet.to_json();
            let back = MetricJet::from_json(&text).unwrap();
            assert_eq!(jet, back);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn document_rejects_inconsistencies() {
        let jet = MetricJet::flat(2, riemannian(2), 2).unwrap();
        let mut doc = jet.to_document();
        doc.coefficients[0].denominator = "0".into();
        assert!(MetricJet::from_document(&doc).is_err());
        let mut doc2 = jet.to_document();
        doc2.coefficients[0].indices = [1, 0];
        assert!(MetricJet::from_document(&doc2).is_err());
    }
}
