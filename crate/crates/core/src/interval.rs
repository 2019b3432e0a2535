//! Interval hulls `I(A, B)` of tensors and hull-level certification.
//!
//! A member of the hull picks every entry independently between the two
//! endpoints. Strong-M membership of the whole hull follows from the two
//! endpoints alone; P, P0, PSD and PD reduce to the `2^n` vertex tensors
//! `I_z = I_c - Δ D_z .. D_z`, one per sign vector `z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{self, classify_m, ClassifyOptions, Label, Property, SearchBudget, Verdict};
use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// Default cap on the dimension for vertex enumeration.
pub const VERTEX_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalHull {
    lower: Tensor,
    upper: Tensor,
    center: Tensor,
    radius: Tensor,
}

impl IntervalHull {
    pub fn new(lower: Tensor, upper: Tensor) -> Result<Self> {
        if let Some(index) = lower.first_exceeding(&upper)? {
            return Err(Error::EndpointOrder { index });
        }
        let center = upper.zip_with(&lower, |b, a| (b + a) / 2.0)?;
        let radius = upper.zip_with(&lower, |b, a| (b - a) / 2.0)?;
        Ok(IntervalHull { lower, upper, center, radius })
    }

    pub fn lower(&self) -> &Tensor {
        &self.lower
    }

    pub fn upper(&self) -> &Tensor {
        &self.upper
    }

    pub fn center(&self) -> &Tensor {
        &self.center
    }

    pub fn radius(&self) -> &Tensor {
        &self.radius
    }

    pub fn order(&self) -> usize {
        self.lower.order()
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    /// Closed membership `A <= C <= B`. With `interior`, entries where the
    /// endpoints differ must lie strictly between them; where they agree the
    /// member must take the common value.
    pub fn contains(&self, c: &Tensor, interior: bool) -> Result<bool> {
        self.lower.compare(c)?;
        let a = self.lower.entries();
        let b = self.upper.entries();
        Ok(c.entries().iter().enumerate().all(|(k, &v)| {
            if interior && a[k] < b[k] {
                a[k] < v && v < b[k]
            } else {
                a[k] <= v && v <= b[k]
            }
        }))
    }

    /// Member with an independent weight per entry, uniform on `[0, 1]`
    /// (or `(0, 1)` for `interior`). Deterministic in `seed`.
    pub fn sample(&self, seed: u64, interior: bool) -> Tensor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t_of = || loop {
            let t: f64 = rng.gen_range(0.0..=1.0);
            if !interior || (t > 0.0 && t < 1.0) {
                return t;
            }
        };
        let a = self.lower.entries();
        let b = self.upper.entries();
        let entries = (0..a.len())
            .map(|k| {
                let t = t_of();
                let v = t * a[k] + (1.0 - t) * b[k];
                // Rounding must not leave the hull.
                let v = v.clamp(a[k], b[k]);
                if interior && a[k] < b[k] && (v == a[k] || v == b[k]) {
                    a[k] + (b[k] - a[k]) / 2.0
                } else {
                    v
                }
            })
            .collect();
        Tensor::new(self.order(), self.dim(), entries).expect("same shape as endpoints")
    }

    /// `I_z`, entrywise `I_c - z_{i1} .. z_{im} Δ`.
    pub fn vertex_tensor(&self, z: &SignVector) -> Result<Tensor> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: z.len() });
        }
        let mut idx = vec![0usize; self.order()];
        let entries = (0..self.lower.len())
            .map(|k| {
                self.lower.decode_into(k, &mut idx);
                let negative = idx.iter().filter(|&&i| z.0[i] < 0).count() % 2 == 1;
                vertex_entry(self.lower.entries()[k], self.upper.entries()[k], negative)
            })
            .collect();
        Ok(Tensor::new(self.order(), self.dim(), entries).expect("same shape"))
    }

    /// Componentwise `x_i (C x^{m-1})_i - x_i (I_z x^{m-1})_i` with `z = sgn(x)`.
    pub fn key_inequality_gap(&self, c: &Tensor, x: &[f64]) -> Result<Vec<f64>> {
        if !self.contains(c, false)? {
            let index = first_outside(self, c);
            return Err(Error::NotMember { index });
        }
        let z = SignVector::of(x);
        let vz = self.vertex_tensor(&z)?;
        let cy = c.apply(x)?;
        let vy = vz.apply(x)?;
        Ok(x.iter().zip(cy.iter().zip(&vy)).map(|(xi, (p, q))| xi * p - xi * q).collect())
    }

    /// Vertex tensors in Gray-code order, each paired with its sign vector.
    /// Consecutive vertices differ by one sign flip, which only touches the
    /// entries where the flipped index occurs an odd number of times.
    pub fn vertices(&self) -> Vec<(SignVector, Tensor)> {
        let n = self.dim();
        let mut z = SignVector(vec![1; n]);
        let mut current = self.lower.clone();
        let mut out = Vec::with_capacity(1 << n);
        out.push((z.clone(), current.clone()));
        let mut idx = vec![0usize; self.order()];
        let (a, b) = (self.lower.entries(), self.upper.entries());
        let mut negative = vec![false; a.len()];
        for step in 1u64..(1u64 << n) {
            let flip = step.trailing_zeros() as usize;
            z.0[flip] = -z.0[flip];
            let mut entries = current.clone().into_entries();
            for k in 0..entries.len() {
                self.lower.decode_into(k, &mut idx);
                if idx.iter().filter(|&&i| i == flip).count() % 2 == 1 {
                    negative[k] = !negative[k];
                    entries[k] = vertex_entry(a[k], b[k], negative[k]);
                }
            }
            current = Tensor::new(self.order(), n, entries).expect("same shape");
            out.push((z.clone(), current.clone()));
        }
        out
    }
}

// Sign product +1 gives I_c - Δ = A, -1 gives I_c + Δ = B; the endpoints are
// returned verbatim so vertices are bit-exact members.
fn vertex_entry(a: f64, b: f64, negative: bool) -> f64 {
    if negative {
        b
    } else {
        a
    }
}

fn first_outside(h: &IntervalHull, c: &Tensor) -> Vec<usize> {
    let a = h.lower.entries();
    let b = h.upper.entries();
    let k = c.entries().iter().enumerate().position(|(k, &v)| !(a[k] <= v && v <= b[k])).unwrap_or(0);
    c.multi_index(k)
}

/// A vector of `+1` / `-1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>")]
pub struct SignVector(Vec<i8>);

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;

    fn try_from(z: Vec<i8>) -> Result<Self> {
        SignVector::new(z)
    }
}

impl SignVector {
    pub fn new(z: Vec<i8>) -> Result<Self> {
        if z.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Format(format!("sign vector entries must be +1 or -1: {z:?}")));
        }
        Ok(SignVector(z))
    }

    /// `sgn(x)` with zero mapped to `+1`.
    pub fn of(x: &[f64]) -> Self {
        SignVector(x.iter().map(|&v| if v >= 0.0 { 1 } else { -1 }).collect())
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        SignVector(self.0.iter().map(|s| -s).collect())
    }

    /// Lexicographic rank with `+1` before `-1`.
    pub fn rank(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &s| acc << 1 | u64::from(s < 0))
    }

    /// Diagonal matrix `D_z`.
    pub fn diag_matrix(&self) -> nalgebra::DMatrix<f64> {
        let d: Vec<f64> = self.0.iter().map(|&s| f64::from(s)).collect();
        crate::tensor::diag_matrix(&d)
    }
}

/// `sgn(x)` with zero mapped to `+1`.
pub fn sign_vector(x: &[f64]) -> SignVector {
    SignVector::of(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub z: SignVector,
    pub verdict: Verdict,
}

/// Which hull member a witness refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Member {
    Lower,
    Upper,
    Center,
    Vertex(SignVector),
}

impl std::fmt::Display for Member {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Member::Lower => f.write_str("lower endpoint"),
            Member::Upper => f.write_str("upper endpoint"),
            Member::Center => f.write_str("center"),
            Member::Vertex(z) => write!(f, "vertex z = {:?}", z.as_slice()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullWitness {
    pub member: Member,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullVerdict {
    pub label: Label,
    /// Violating member for `CertifiedNo`.
    pub witness: Option<HullWitness>,
    /// Endpoint verdicts backing a strong-M answer.
    pub endpoints: Vec<HullWitness>,
    /// Per-vertex verdicts, sorted by sign vector, for vertex reductions.
    pub vertices: Vec<VertexRecord>,
    /// Sign vectors whose vertex check was inconclusive.
    pub inconclusive: Vec<SignVector>,
}

impl HullVerdict {
    fn new(label: Label) -> Self {
        HullVerdict { label, witness: None, endpoints: Vec::new(), vertices: Vec::new(), inconclusive: Vec::new() }
    }

    fn no(witness: HullWitness) -> Self {
        HullVerdict { witness: Some(witness), ..Self::new(Label::CertifiedNo) }
    }
}

impl IntervalHull {
    /// Concrete tensor for a witness member.
    pub fn member(&self, m: &Member) -> Result<Tensor> {
        Ok(match m {
            Member::Lower => self.lower.clone(),
            Member::Upper => self.upper.clone(),
            Member::Center => self.center.clone(),
            Member::Vertex(z) => self.vertex_tensor(z)?,
        })
    }
}

/// Every member is a strong M-tensor iff the upper endpoint is a Z-tensor and
/// the lower endpoint is a strong M-tensor.
pub fn hull_is_strong_m(h: &IntervalHull, opts: &ClassifyOptions) -> HullVerdict {
    let upper = classify_m(h.upper(), opts);
    if upper.label == Label::NotZ {
        return HullVerdict::no(HullWitness { member: Member::Upper, verdict: upper });
    }
    let lower = classify_m(h.lower(), opts);
    match lower.answer_for(Property::StrongM) {
        Label::Yes => {
            let mut v = HullVerdict::new(Label::Yes);
            v.endpoints = vec![
                HullWitness { member: Member::Lower, verdict: lower },
                HullWitness { member: Member::Upper, verdict: upper },
            ];
            v
        }
        Label::CertifiedNo => HullVerdict::no(HullWitness { member: Member::Lower, verdict: lower }),
        _ => {
            let mut v = HullVerdict::new(Label::NoCounterexampleFound);
            v.endpoints = vec![HullWitness { member: Member::Lower, verdict: lower }];
            v
        }
    }
}

/// Every interior member is a strong M-tensor when `A` is an M-tensor and `B`
/// a strong M-tensor. When `B` is M but not strong, interior members are M
/// but not strong, and the center is reported as the witness.
pub fn interior_is_strong_m(h: &IntervalHull, opts: &ClassifyOptions) -> HullVerdict {
    let upper = classify_m(h.upper(), opts);
    if upper.label == Label::NotZ {
        // Off-diagonal entries with A = B are shared by interior members; otherwise
        // the center is not Z either since A <= B.
        let center = classify_m(h.center(), opts);
        if center.label == Label::NotZ {
            return HullVerdict::no(HullWitness { member: Member::Center, verdict: center });
        }
        let mut v = HullVerdict::new(Label::NoCounterexampleFound);
        v.endpoints = vec![HullWitness { member: Member::Upper, verdict: upper }];
        return v;
    }
    let lower = classify_m(h.lower(), opts);
    let lower_answer = lower.answer_for(Property::M);
    if lower_answer == Label::CertifiedNo {
        if lower.label == Label::NotZ {
            return HullVerdict::no(HullWitness { member: Member::Lower, verdict: lower });
        }
        // A is Z but not M; the center is the natural interior candidate.
        let center = classify_m(h.center(), opts);
        if center.answer_for(Property::StrongM) == Label::CertifiedNo {
            return HullVerdict::no(HullWitness { member: Member::Center, verdict: center });
        }
        let mut v = HullVerdict::new(Label::NoCounterexampleFound);
        v.endpoints = vec![HullWitness { member: Member::Lower, verdict: lower }];
        return v;
    }
    let upper_answer = upper.answer_for(Property::StrongM);
    if lower_answer == Label::Yes && upper_answer == Label::Yes {
        let mut v = HullVerdict::new(Label::Yes);
        v.endpoints = vec![
            HullWitness { member: Member::Lower, verdict: lower },
            HullWitness { member: Member::Upper, verdict: upper },
        ];
        return v;
    }
    if upper_answer == Label::CertifiedNo {
        let center = classify_m(h.center(), opts);
        if center.answer_for(Property::StrongM) == Label::CertifiedNo {
            return HullVerdict::no(HullWitness { member: Member::Center, verdict: center });
        }
    }
    let mut v = HullVerdict::new(Label::NoCounterexampleFound);
    v.endpoints = vec![
        HullWitness { member: Member::Lower, verdict: lower },
        HullWitness { member: Member::Upper, verdict: upper },
    ];
    v
}

pub fn hull_is_p(h: &IntervalHull, budget: &SearchBudget) -> Result<HullVerdict> {
    vertex_reduction(h, budget, Property::P)
}

pub fn hull_is_p0(h: &IntervalHull, budget: &SearchBudget) -> Result<HullVerdict> {
    vertex_reduction(h, budget, Property::P0)
}

pub fn hull_is_psd(h: &IntervalHull, budget: &SearchBudget) -> Result<HullVerdict> {
    vertex_reduction(h, budget, Property::Psd)
}

pub fn hull_is_pd(h: &IntervalHull, budget: &SearchBudget) -> Result<HullVerdict> {
    vertex_reduction(h, budget, Property::Pd)
}

pub fn vertex_reduction(h: &IntervalHull, budget: &SearchBudget, property: Property) -> Result<HullVerdict> {
    vertex_reduction_capped(h, budget, property, VERTEX_CAP)
}

/// Classifies all `2^n` vertex tensors. For even order `I_z = I_{-z}`, so
/// only the vertices with `z_0 = +1` are evaluated and their verdicts shared.
pub fn vertex_reduction_capped(
    h: &IntervalHull,
    budget: &SearchBudget,
    property: Property,
    cap: usize,
) -> Result<HullVerdict> {
    let n = h.dim();
    if n > cap {
        return Err(Error::TooLarge { dim: n, cap });
    }
    let check: fn(&Tensor, &SearchBudget) -> Verdict = match property {
        Property::P => classify::is_p,
        Property::P0 => classify::is_p0,
        Property::Psd => classify::is_psd,
        Property::Pd => classify::is_pd,
        Property::M | Property::StrongM => {
            return Err(Error::Format("M classes are certified from the endpoints".into()))
        }
    };
    let even = h.order() % 2 == 0;
    let vertices: Vec<(SignVector, Tensor)> = h
        .vertices()
        .into_iter()
        .filter(|(z, _)| !even || z.as_slice()[0] > 0)
        .collect();
    let evaluated: Vec<(SignVector, Verdict)> =
        vertices.into_par_iter().map(|(z, t)| (z, check(&t, budget))).collect();
    let mut records: Vec<VertexRecord> = Vec::with_capacity(1 << n);
    for (z, verdict) in evaluated {
        if even {
            records.push(VertexRecord { z: z.negated(), verdict: verdict.clone() });
        }
        records.push(VertexRecord { z, verdict });
    }
    records.sort_by_key(|r| r.z.rank());

    let failing = records.iter().find(|r| r.verdict.label == Label::CertifiedNo);
    let inconclusive: Vec<SignVector> =
        records.iter().filter(|r| r.verdict.label != Label::Yes && r.verdict.label != Label::CertifiedNo).map(|r| r.z.clone()).collect();
    let mut out = match failing {
        Some(r) => HullVerdict::no(HullWitness { member: Member::Vertex(r.z.clone()), verdict: r.verdict.clone() }),
        None if inconclusive.is_empty() => HullVerdict::new(Label::Yes),
        None => HullVerdict::new(Label::NoCounterexampleFound),
    };
    out.inconclusive = inconclusive;
    out.vertices = records;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(e: &[f64]) -> Tensor {
        Tensor::new(2, 2, e.to_vec()).unwrap()
    }

    fn worked_hull() -> IntervalHull {
        IntervalHull::new(mat(&[1., -1., -1., 1.]), mat(&[2., 1., 1., 2.])).unwrap()
    }

    #[test]
    fn hull_new_examples() {
        let a = Tensor::ones(3, 2);
        let h = IntervalHull::new(a.clone(), a.clone()).unwrap();
        assert_eq!(h.radius(), &Tensor::zeros(3, 2));
        assert_eq!(h.sample(3, false), a);

        let h = worked_hull();
        assert_eq!(h.center().entries(), &[1.5, 0., 0., 1.5]);
        assert_eq!(h.radius().entries(), &[0.5, 1., 1., 0.5]);

        let err = IntervalHull::new(mat(&[0.0, 0.0, 0.0, 0.0]).principal_subtensor(&crate::IndexSet::full(1)).unwrap(),
            Tensor::new(2, 1, vec![-1.0]).unwrap()).unwrap_err();
        assert_eq!(err, Error::EndpointOrder { index: vec![0, 0] });
    }

    #[test]
    fn contains_examples() {
        let h = worked_hull();
        assert!(h.contains(h.center(), false).unwrap());
        assert!(h.contains(h.center(), true).unwrap());
        assert!(h.contains(h.lower(), false).unwrap());
        assert!(!h.contains(h.lower(), true).unwrap());
        let mut above = h.upper().clone();
        above.set(&[0, 1], 1.5);
        assert!(!h.contains(&above, false).unwrap());
    }

    #[test]
    fn degenerate_entries_are_interior() {
        let a = mat(&[1., 0., 0., 1.]);
        let mut b = a.clone();
        b.set(&[0, 1], 2.0);
        let h = IntervalHull::new(a, b).unwrap();
        let mut c = h.lower().clone();
        c.set(&[0, 1], 1.0);
        assert!(h.contains(&c, true).unwrap());
    }

    #[test]
    fn sign_vector_examples() {
        assert_eq!(sign_vector(&[0.0, -2.0, 3.0]).as_slice(), &[1, -1, 1]);
        assert_eq!(sign_vector(&[-1.0, -0.5]).as_slice(), &[-1, -1]);
        assert_eq!(sign_vector(&[0.0; 3]).as_slice(), &[1, 1, 1]);
        assert!(SignVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn vertex_tensor_examples() {
        let h = worked_hull();
        let plus = SignVector::new(vec![1, 1]).unwrap();
        assert_eq!(h.vertex_tensor(&plus).unwrap(), *h.lower());
        assert_eq!(h.vertex_tensor(&plus.negated()).unwrap(), *h.lower());
        let mixed = SignVector::new(vec![1, -1]).unwrap();
        assert_eq!(h.vertex_tensor(&mixed).unwrap().entries(), &[1., 1., 1., 1.]);

        let h3 = IntervalHull::new(Tensor::zeros(3, 2), Tensor::ones(3, 2)).unwrap();
        let minus = SignVector::new(vec![-1, -1]).unwrap();
        assert_eq!(h3.vertex_tensor(&minus).unwrap(), *h3.upper());
        assert!(h3.vertex_tensor(&SignVector::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn vertex_tensor_matches_matrix_product_form() {
        let h = IntervalHull::new(
            Tensor::from_fn(3, 3, |i| -((i[0] + i[1] * 2 + i[2]) as f64)),
            Tensor::from_fn(3, 3, |i| (i[0] * i[1] + i[2]) as f64 * 0.5),
        )
        .unwrap();
        for (z, v) in h.vertices() {
            let via_product = h.center().sub(&h.radius().matrix_product(&z.diag_matrix()).unwrap()).unwrap();
            for (p, q) in v.entries().iter().zip(via_product.entries()) {
                assert!((p - q).abs() < 1e-12);
            }
            assert_eq!(v, h.vertex_tensor(&z).unwrap());
        }
    }

    #[test]
    fn key_gap_edge_cases() {
        let h = worked_hull();
        let c = h.sample(9, false);
        assert_eq!(h.key_inequality_gap(&c, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        let x = [0.3, -1.2];
        let vz = h.vertex_tensor(&sign_vector(&x)).unwrap();
        assert!(h.key_inequality_gap(&vz, &x).unwrap().iter().all(|&g| g == 0.0));
        let mut out = h.upper().clone();
        out.set(&[1, 1], 9.0);
        assert!(h.key_inequality_gap(&out, &x).is_err());
    }

    #[test]
    fn worked_hull_vertex_verdicts() {
        let h = worked_hull();
        let b = SearchBudget::default();
        assert_eq!(hull_is_psd(&h, &b).unwrap().label, Label::Yes);
        let pd = hull_is_pd(&h, &b).unwrap();
        assert_eq!(pd.label, Label::CertifiedNo);
        assert_eq!(pd.vertices.len(), 4);
        let p = hull_is_p(&h, &b).unwrap();
        assert_eq!(p.label, Label::CertifiedNo);
        let w = p.witness.unwrap();
        let member = h.member(&w.member).unwrap();
        assert!(w.verdict.certificate.unwrap().check(&member).is_ok());
        assert_eq!(hull_is_p0(&h, &b).unwrap().label, Label::Yes);
    }

    #[test]
    fn strong_m_hull_examples() {
        let opts = ClassifyOptions::default();
        let ones = Tensor::ones(3, 2);
        let id = Tensor::identity(3, 2);
        let a = id.scaled(5.0).sub(&ones).unwrap();
        let off = ones.sub(&id).unwrap();
        let b = id.scaled(5.0).sub(&off.scaled(0.5)).unwrap();
        let h = IntervalHull::new(a.clone(), b.clone()).unwrap();
        let v = hull_is_strong_m(&h, &opts);
        assert_eq!(v.label, Label::Yes);
        assert_eq!(v.endpoints.len(), 2);

        let mut bad_b = b.clone();
        bad_b.set(&[0, 1, 1], 0.1);
        let v = hull_is_strong_m(&IntervalHull::new(a.clone(), bad_b).unwrap(), &opts);
        assert_eq!(v.label, Label::CertifiedNo);
        assert_eq!(v.witness.unwrap().member, Member::Upper);

        let boundary = id.scaled(4.0).sub(&ones).unwrap();
        let b4 = id.scaled(4.0).sub(&off.scaled(0.5)).unwrap();
        let h4 = IntervalHull::new(boundary.clone(), b4).unwrap();
        let v = hull_is_strong_m(&h4, &opts);
        assert_eq!(v.label, Label::CertifiedNo);
        assert_eq!(v.witness.unwrap().member, Member::Lower);

        assert_eq!(interior_is_strong_m(&h4, &opts).label, Label::Yes);
        let strong = IntervalHull::new(a.clone(), a.clone()).unwrap();
        assert_eq!(interior_is_strong_m(&strong, &opts).label, Label::Yes);

        let mut not_z = a.clone();
        not_z.set(&[0, 0, 1], 0.5);
        let h = IntervalHull::new(not_z.clone(), not_z.add(&id).unwrap()).unwrap();
        assert_eq!(interior_is_strong_m(&h, &opts).label, Label::CertifiedNo);
    }

    #[test]
    fn cap_is_enforced() {
        let h = IntervalHull::new(Tensor::zeros(2, 3), Tensor::ones(2, 3)).unwrap();
        assert!(matches!(
            vertex_reduction_capped(&h, &SearchBudget::default(), Property::Psd, 2),
            Err(Error::TooLarge { dim: 3, cap: 2 })
        ));
    }
}
