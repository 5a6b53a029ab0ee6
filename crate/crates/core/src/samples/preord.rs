use rand::Rng;

use crate::preord::{max_cell_value, CentralCell, MonotoneMap, PreordObject, Scalar};

/// Cells `c: f ⇒ g`, `c2: g ⇒ h` on `X → Y` and `d: i ⇒ j`, `d2: j ⇒ k` on
/// `Y → Z`, ready for an interchange check.
#[derive(Clone, Debug)]
pub struct CellSquare {
    pub c: CentralCell,
    pub c2: CentralCell,
    pub d: CentralCell,
    pub d2: CentralCell,
}

fn small_rational<R: Rng>(rng: &mut R, max: i64) -> Scalar {
    Scalar::new(rng.gen_range(0..=max), rng.gen_range(1..=2))
}

/// A numeric object of dimension 1 to 3 whose sample holds the standard
/// basis and a few random comparable points.
pub fn random_numeric_object<R: Rng>(rng: &mut R) -> PreordObject {
    let dim = rng.gen_range(1..=3);
    let mut sample: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| (0..dim).map(|j| Scalar::from_integer((i == j) as i64)).collect())
        .collect();
    for _ in 0..rng.gen_range(1..=3) {
        let base: Vec<Scalar> = (0..dim).map(|_| small_rational(rng, 4)).collect();
        let above: Vec<Scalar> = base.iter().map(|q| q + small_rational(rng, 2)).collect();
        sample.push(base);
        sample.push(above);
    }
    PreordObject::numeric(dim, sample).expect("nonnegative sample")
}

fn random_matrix<R: Rng>(rng: &mut R, dom: &PreordObject, cod: &PreordObject) -> MonotoneMap {
    let dim = |o: &PreordObject| match o {
        PreordObject::Numeric { dim, .. } => *dim,
        PreordObject::Finite(_) => unreachable!("numeric objects only"),
    };
    let a = (0..dim(cod))
        .map(|_| (0..dim(dom)).map(|_| Scalar::from_integer(rng.gen_range(1..=4))).collect())
        .collect();
    MonotoneMap::matrix(dom, cod, a).expect("shape matches")
}

/// The largest valid cell `f ⇒ g`, or a random one if every scalar works.
fn best_cell<R: Rng>(rng: &mut R, f: &MonotoneMap, g: &MonotoneMap) -> CentralCell {
    let value = match max_cell_value(f, g).expect("parallel numeric maps") {
        Some(Some(v)) => v,
        Some(None) => Scalar::new(rng.gen_range(1..=5), rng.gen_range(1..=3)),
        None => unreachable!("strictly positive matrices always admit a cell"),
    };
    CentralCell::new(value, f.clone(), g.clone()).expect("maximal value is valid")
}

pub fn random_cell_square<R: Rng>(rng: &mut R) -> CellSquare {
    let (x, y, z) = (random_numeric_object(rng), random_numeric_object(rng), random_numeric_object(rng));
    let (f, g, h) = (random_matrix(rng, &x, &y), random_matrix(rng, &x, &y), random_matrix(rng, &x, &y));
    let (i, j, k) = (random_matrix(rng, &y, &z), random_matrix(rng, &y, &z), random_matrix(rng, &y, &z));
    CellSquare {
        c: best_cell(rng, &f, &g),
        c2: best_cell(rng, &g, &h),
        d: best_cell(rng, &i, &j),
        d2: best_cell(rng, &j, &k),
    }
}
