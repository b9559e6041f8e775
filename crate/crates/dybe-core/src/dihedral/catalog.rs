use super::irrep::IrrepLabel;
use crate::error::{Error, Result};

/// An ordered pair `(a, b)` labelling a projector or coefficient function,
/// with `d` the dimension of the tensor-squared irrep (`n` for odd n, `m`
/// for n = 2m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct AlphaPair {
    pub a: i64,
    pub b: i64,
    pub d: usize,
}

impl AlphaPair {
    pub fn new(a: i64, b: i64, d: usize) -> Self {
        Self { a, b, d }
    }

    /// The `c^α` prefactor: `1/2` for self-conjugate pairs, else `1`,
    /// returned as the denominator.
    pub fn c_denominator(&self) -> i64 {
        let d = self.d as i64;
        let special = |v: i64| v == 0 || (d % 2 == 0 && v == d / 2);
        if special(self.a) && special(self.b) {
            2
        } else {
            1
        }
    }
}

/// Which family of m-dimensional irreps is tensor-squared when n = 2m with
/// m even (Tables 5 and 6 respectively).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MVariant {
    #[default]
    Tau,
    SigmaTau,
}

fn floor_quarter(x: i64) -> i64 {
    x.div_euclid(4)
}

/// The pairs of Table 2 (n odd), Table 4 (n = 2m, m odd), or Tables 5/6
/// (n = 2m, m even).
pub fn catalog(n: u64) -> Result<Vec<AlphaPair>> {
    if n < 3 {
        return Err(Error::Invalid(format!("catalog needs n ≥ 3, got {n}")));
    }
    let n_i = n as i64;
    let mut out = Vec::new();
    if n % 2 == 1 {
        let d = n as usize;
        out.push(AlphaPair::new(0, 0, d));
        out.extend((1..=(n_i - 1) / 2).map(|b| AlphaPair::new(0, b, d)));
        for a in 1..=(n_i - 1) / 2 {
            out.extend((0..n_i).map(|b| AlphaPair::new(a, b, d)));
        }
        return Ok(out);
    }
    let m = n_i / 2;
    let d = m as usize;
    if m % 2 == 1 {
        out.push(AlphaPair::new(0, 0, d));
        out.extend((1..=(m - 1) / 2).map(|b| AlphaPair::new(0, b, d)));
        for a in 1..=(m - 1) / 2 {
            out.extend((0..m).map(|b| AlphaPair::new(a, b, d)));
        }
    } else {
        let h = m / 2;
        for a in [0, h] {
            for b in [0, h] {
                out.push(AlphaPair::new(a, b, d));
            }
        }
        out.extend((1..h).map(|b| AlphaPair::new(0, b, d)));
        out.extend((1..h).map(|b| AlphaPair::new(h, b, d)));
        for a in 1..h {
            out.extend((0..m).map(|b| AlphaPair::new(a, b, d)));
        }
    }
    Ok(out)
}

/// The irrep of D(D_n) that a catalog pair stands for.
pub fn label_for(n: u64, alpha: AlphaPair, variant: MVariant) -> Result<IrrepLabel> {
    let (a, b) = (alpha.a, alpha.b);
    let n_i = n as i64;
    if !catalog(n)?.contains(&alpha) {
        return Err(Error::Invalid(format!("({a},{b}) is not in the catalog for n = {n}")));
    }
    if n % 2 == 1 {
        let low = floor_quarter(n_i - 1);
        let high = floor_quarter(n_i + 3);
        return Ok(match (a, b) {
            (0, 0) => IrrepLabel::OneDimOdd { plus: true },
            (0, b) if b <= low => IrrepLabel::TwoDim { l: 0, k: 2 * b },
            (0, b) if b >= high => IrrepLabel::TwoDim { l: 0, k: n_i - 2 * b },
            (a, b) if a <= low => IrrepLabel::TwoDim { l: 2 * a, k: (2 * b).rem_euclid(n_i) },
            (a, b) if a >= high => IrrepLabel::TwoDim { l: n_i - 2 * a, k: (n_i - 2 * b).rem_euclid(n_i) },
            _ => unreachable!("Table 2 rows cover every catalog pair"),
        });
    }
    let m = n_i / 2;
    let h = m / 2;
    Ok(match (a, b) {
        (0, 0) if m % 2 == 1 => IrrepLabel::OneDimEven { sigma_m: false, a: 0, b: 0 },
        (a, b) if m % 2 == 0 && (a == 0 || a == h) && (b == 0 || b == h) => {
            let bit = u8::from(b == h);
            let abit = if variant == MVariant::SigmaTau { bit } else { 0 };
            IrrepLabel::OneDimEven { sigma_m: a == h, a: abit, b: bit }
        }
        (0, b) => IrrepLabel::TwoDim { l: 0, k: 2 * b },
        (a, b) if m % 2 == 0 && a == h => IrrepLabel::TwoDim { l: m, k: 2 * b },
        (a, b) => IrrepLabel::TwoDim { l: 2 * a, k: 2 * b },
    })
}
