use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::PoleSet;

/// Reproducible sample points on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    /// Chord distance kept from every pole.
    pub margin: f64,
    pub tolerance: f64,
}

/// A sample point: the backend values and their f64 images for reports.
#[derive(Clone, Debug)]
pub struct Point<S> {
    pub values: Vec<S>,
    pub display: Vec<[f64; 2]>,
}

const MAX_DRAWS: usize = 100_000;

impl SamplePlan {
    pub fn new(count: usize, seed: u64, tolerance: f64) -> Self {
        Self { count, seed, margin: 1e-3, tolerance }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// `count` tuples of `vars` angles in `[0, 2π)` accepted by `ok`.
    pub fn angles(&self, stream: u64, vars: usize, ok: impl Fn(&[f64]) -> bool) -> Result<Vec<Vec<f64>>> {
        let mut rng = self.rng(stream);
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..MAX_DRAWS {
            if out.len() == self.count {
                return Ok(out);
            }
            let t: Vec<f64> = (0..vars).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            if ok(&t) {
                out.push(t);
            }
        }
        Err(Error::Invalid("no admissible sample points; the pole margin is too large".into()))
    }

    /// Pairs `(x, y)` with `x`, `y`, `xy`, `x/y` and `y/x` all clear of `poles`.
    pub fn pairs<S: Scalar>(&self, ctx: &S::Ctx, poles: &PoleSet) -> Result<Vec<Point<S>>> {
        let m = self.margin;
        let angles = self
            .angles(0, 2, |t| [t[0], t[1], t[0] + t[1], t[0] - t[1], t[1] - t[0]].iter().all(|&a| !poles.near(a, m)))?;
        angles.iter().map(|t| point(ctx, t)).collect()
    }

    /// Single points clear of `poles`.
    pub fn singles<S: Scalar>(&self, ctx: &S::Ctx, poles: &PoleSet) -> Result<Vec<Point<S>>> {
        let angles = self.angles(1, 1, |t| !poles.near(t[0], self.margin))?;
        angles.iter().map(|t| point(ctx, t)).collect()
    }

    /// `vars` independent points, each clear of `±1` (used for `λ, μ, ν`).
    pub fn away_from_signs<S: Scalar>(&self, ctx: &S::Ctx, stream: u64, vars: usize) -> Result<Vec<Point<S>>> {
        let signs = PoleSet { zero: false, circle: vec![(0, 2), (1, 2)] };
        let angles = self.angles(stream, vars, |t| t.iter().all(|&a| !signs.near(a, 0.05)))?;
        angles.iter().map(|t| point(ctx, t)).collect()
    }

    /// Real points in `(−3, 3)` at distance at least `margin` from `0` and `±1`.
    pub fn reals<S: Scalar>(&self, ctx: &S::Ctx) -> Result<Vec<Point<S>>> {
        let mut rng = self.rng(2);
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..MAX_DRAWS {
            if out.len() == self.count {
                break;
            }
            let r: f64 = rng.gen_range(-3.0..3.0);
            if [0.0, 1.0, -1.0].iter().all(|c| (r - c).abs() > self.margin.max(0.05)) {
                let v = S::from_f64_parts(ctx, r, 0.0)
                    .ok_or_else(|| Error::Invalid("backend cannot hold f64 points".into()))?;
                out.push(Point { values: vec![v], display: vec![[r, 0.0]] });
            }
        }
        Ok(out)
    }
}

/// `exp(it)` as `((1 − s²) + 2is)/(1 + s²)` with `s = tan(t/2)` rounded to f64,
/// so that the modulus is 1 at working precision.
pub fn unit_point<S: Scalar>(ctx: &S::Ctx, t: f64) -> Result<S> {
    let s = (t / 2.0).tan();
    let hold =
        |v: f64| S::from_f64_parts(ctx, v, 0.0).ok_or_else(|| Error::Invalid("backend cannot hold f64 points".into()));
    let sv = hold(s)?;
    let one = S::one(ctx);
    let s2 = sv.mul(&sv);
    let i = S::unit(ctx, 1, 4)?;
    let num = one.sub(&s2).add(&i.mul(&sv.add(&sv)));
    Ok(num.div(&one.add(&s2)).expect("1 + s² > 0"))
}

pub(crate) fn point<S: Scalar>(ctx: &S::Ctx, t: &[f64]) -> Result<Point<S>> {
    let values = t.iter().map(|&a| unit_point(ctx, a)).collect::<Result<Vec<S>>>()?;
    let display = values.iter().map(|v| {
        let c = v.to_c64();
        [c.re, c.im]
    });
    Ok(Point { display: display.collect(), values })
}
