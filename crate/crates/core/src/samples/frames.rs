use num_complex::Complex64;
use rand::Rng;

use crate::bridge::BridgeData;
use crate::frame::{BesselFamily, CMatrix, Field, RhoForm, Tolerances};

fn entry(rng: &mut impl Rng, field: Field) -> Complex64 {
    let re = rng.gen_range(-1.0..=1.0);
    let im = if field == Field::Complex { rng.gen_range(-1.0..=1.0) } else { 0.0 };
    Complex64::new(re, im)
}

pub fn random_field(rng: &mut impl Rng) -> Field {
    if rng.gen_bool(0.5) {
        Field::Real
    } else {
        Field::Complex
    }
}

/// Entries uniform in the unit square (or interval).
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| entry(rng, field))
}

/// `count` vectors in dimension `dim` with weights in `[1/2, 2]`.
pub fn random_family(rng: &mut impl Rng, field: Field, dim: usize, count: usize) -> BesselFamily {
    let vectors = random_matrix(rng, dim, count, field);
    let weights = (0..count).map(|_| rng.gen_range(0.5..=2.0)).collect();
    BesselFamily::new(field, weights, vectors).expect("random family")
}

/// A family that spans fewer than `dim` directions when `count < dim`, and
/// sometimes even when it does not.
pub fn random_family_maybe_degenerate(rng: &mut impl Rng, field: Field, dim: usize, count: usize) -> BesselFamily {
    if count == 0 || !rng.gen_bool(0.3) {
        return random_family(rng, field, dim, count);
    }
    let span = rng.gen_range(1..dim.max(2)).min(dim);
    let basis = random_matrix(rng, dim, span, field);
    let coeffs = random_matrix(rng, span, count, field);
    let weights = (0..count).map(|_| rng.gen_range(0.5..=2.0)).collect();
    BesselFamily::new(field, weights, basis * coeffs).expect("random family")
}

/// Q factor of a random square matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize, field: Field) -> CMatrix {
    loop {
        let a = random_matrix(rng, n, n, field);
        if a.clone().singular_values().min() > 1e-3 {
            return a.qr().q();
        }
    }
}

/// Unit-modulus phases; `±1` for the real field.
pub fn random_phases(rng: &mut impl Rng, count: usize, field: Field) -> Vec<Complex64> {
    (0..count)
        .map(|_| match field {
            Field::Real => Complex64::new(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }, 0.0),
            Field::Complex => Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    FullRank,
    EqualKernel,
    KernelMismatch,
}

/// Two forms with known kernels, given as orthonormal columns.
#[derive(Clone, Debug)]
pub struct PsdPair {
    pub kind: PairKind,
    pub a: RhoForm,
    pub b: RhoForm,
    pub kernel_a: CMatrix,
    pub kernel_b: CMatrix,
}

fn random_pd(rng: &mut impl Rng, r: usize, field: Field) -> CMatrix {
    let g = random_matrix(rng, r, r, field);
    &g * g.adjoint() + CMatrix::identity(r, r).scale(0.05)
}

/// `C M C*` with `C` the last `n - k` columns of `q` and a random positive
/// definite `M`, times a random scale.
fn supported_on(rng: &mut impl Rng, q: &CMatrix, k: usize, field: Field) -> CMatrix {
    let n = q.ncols();
    let c = q.columns(k, n - k).into_owned();
    let scale = 10f64.powf(rng.gen_range(-2.0..=2.0));
    (&c * random_pd(rng, n - k, field) * c.adjoint()).scale(scale)
}

fn form(p: CMatrix) -> RhoForm {
    RhoForm::new(crate::frame::linalg::hermitian_part(&p), Tolerances::default()).expect("constructed PSD")
}

/// A pair of kind `kind` in dimension `n`.
pub fn random_psd_pair(rng: &mut impl Rng, n: usize, field: Field, kind: PairKind) -> PsdPair {
    let q = random_unitary(rng, n, field);
    match kind {
        PairKind::FullRank => PsdPair {
            kind,
            a: form(supported_on(rng, &q, 0, field)),
            b: form(supported_on(rng, &q, 0, field)),
            kernel_a: CMatrix::zeros(n, 0),
            kernel_b: CMatrix::zeros(n, 0),
        },
        PairKind::EqualKernel => {
            let k = rng.gen_range(1..n);
            PsdPair {
                kind,
                a: form(supported_on(rng, &q, k, field)),
                b: form(supported_on(rng, &q, k, field)),
                kernel_a: q.columns(0, k).into_owned(),
                kernel_b: q.columns(0, k).into_owned(),
            }
        }
        PairKind::KernelMismatch => {
            let q2 = random_unitary(rng, n, field);
            let ka = rng.gen_range(1..n);
            let kb = rng.gen_range(0..n);
            let pair = PsdPair {
                kind,
                a: form(supported_on(rng, &q, ka, field)),
                b: form(supported_on(rng, &q2, kb, field)),
                kernel_a: q.columns(0, ka).into_owned(),
                kernel_b: q2.columns(0, kb).into_owned(),
            };
            if rng.gen_bool(0.5) {
                PsdPair { kind, a: pair.b, b: pair.a, kernel_a: pair.kernel_b, kernel_b: pair.kernel_a }
            } else {
                pair
            }
        }
    }
}

/// A bridge instance in dimensions at most 3 with at most 4 vectors per
/// family. With `constructed`, `f̃ = g f` for an invertible `g`, `u₁ = g^{-*}`
/// and `v₁ = g*`, so the pair is equivalent by construction; otherwise
/// every component is random.
pub fn random_bridge_instance(rng: &mut impl Rng, constructed: bool) -> (BesselFamily, BesselFamily, BridgeData) {
    let field = random_field(rng);
    let (n, nt) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let (m, mt) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
    let f = random_family_maybe_degenerate(rng, field, n, m);
    if constructed {
        let g = random_matrix(rng, n, n, field) + CMatrix::identity(n, n).scale(2.0);
        let inv = g.clone().try_inverse().expect("diagonally dominant");
        let ft = f.transported(&g).expect("square transport");
        let data = BridgeData {
            u1: g.adjoint(),
            u2: random_matrix(rng, m, m, field),
            v1: inv.adjoint(),
            v2: random_matrix(rng, m, m, field),
        };
        return (f, ft, data);
    }
    let data = BridgeData {
        u1: random_matrix(rng, n, nt, field),
        u2: random_matrix(rng, mt, m, field),
        v1: random_matrix(rng, nt, n, field),
        v2: random_matrix(rng, m, mt, field),
    };
    let ft = random_family_maybe_degenerate(rng, field, nt, mt);
    (f, ft, data)
}
