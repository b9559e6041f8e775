//! `dybe build`: evaluate one object and export it.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dybe_core::builders::{l_operator, six_vertex_r, Descendant, FzWeights, Params};
use dybe_core::dihedral::{projector_closed, AlphaPair, DoubleRep};
use dybe_core::verify::canonical_for;
use dybe_core::{Cyclo, CycloField, MpComplex, Operator, RootOfUnity, Scalar};

use crate::export::{precision, ExportRecord, Metadata, Parity, Root, ZValue};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    /// Six-vertex `r(z)`, 4×4.
    #[value(name = "r6v")]
    R6v,
    /// `L(z)` on `C² ⊗ C^d`.
    #[value(name = "L")]
    L,
    /// Descendant `R(z)` for odd `n`.
    #[value(name = "Rodd")]
    Rodd,
    /// Descendant `R(z)` for `n = 2m`.
    #[value(name = "Reven")]
    Reven,
    /// `R⁺(z)` from the single-power root of order `m`.
    #[value(name = "Rplus")]
    Rplus,
    /// `R⁻(z)` from the single-power root of order `m`.
    #[value(name = "Rminus")]
    Rminus,
    /// `R⁺(z) + μR⁻(z)`.
    #[value(name = "Rmu")]
    Rmu,
    /// Projection operator `p^α`.
    #[value(name = "projector")]
    Projector,
    /// `(π ⊗ π)𝓡`.
    #[value(name = "canonical")]
    Canonical,
    /// Fateev–Zamolodchikov limit `lim R(zy, y)` with `λ = −ω⁻¹`.
    #[value(name = "fz")]
    Fz,
}

impl Object {
    fn name(self) -> &'static str {
        match self {
            Self::R6v => "r6v",
            Self::L => "L",
            Self::Rodd => "Rodd",
            Self::Reven => "Reven",
            Self::Rplus => "Rplus",
            Self::Rminus => "Rminus",
            Self::Rmu => "Rmu",
            Self::Projector => "projector",
            Self::Canonical => "canonical",
            Self::Fz => "fz",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct BuildArgs {
    #[arg(ignore_case = true)]
    pub object: Object,
    /// Group order `n` (`D_n`).
    #[arg(long)]
    pub n: Option<u64>,
    /// Half order: `n = 2m`, or the order of `ω` for Rplus, Rminus, Rmu.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub l: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub k: i64,
    /// Power `t` of the primitive root `exp(2πi·t/n)`.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub t: i64,
    /// Spectral parameter `re` or `re,im`; `0` and `1` are evaluated exactly.
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<String>,
    /// `μ` as `re` or `re,im`.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<String>,
    /// Projector label `a,b`.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<String>,
    /// Export `Ř = P·R` instead of `R`.
    #[arg(long)]
    pub braided: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, env = "DYBE_PRECISION", default_value_t = 256)]
    pub precision: usize,
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<[f64; 2], CliError> {
    let bad = || CliError::Input(format!("expected re or re,im, got {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
    match parts.as_slice() {
        [re] => Ok([num(re)?, 0.0]),
        [re, im] => Ok([num(re)?, num(im)?]),
        _ => Err(bad()),
    }
}

fn parse_alpha(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("expected --alpha a,b, got {s:?}"));
    let parts = s.split(',').map(|p| p.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    match parts.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(bad()),
    }
}

/// `--n`, or `2m` from `--m`.
pub fn group_order(n: Option<u64>, m: Option<u64>) -> Result<u64, CliError> {
    match (n, m) {
        (Some(_), Some(_)) => Err(CliError::Input("give --n or --m, not both".into())),
        (Some(n), None) => Ok(n),
        (None, Some(m)) => Ok(2 * m),
        (None, None) => Err(CliError::Input("missing --n or --m".into())),
    }
}

/// A fully resolved build request.
struct Plan {
    object: Object,
    params: Params,
    n: u64,
    t: i64,
    braided: bool,
    alpha: Option<(i64, i64)>,
}

impl Plan {
    fn resolve(a: &BuildArgs) -> Result<Self, CliError> {
        let single_power = matches!(a.object, Object::Rplus | Object::Rminus | Object::Rmu);
        let (params, n) = if single_power {
            let m = match (a.n, a.m) {
                (None, Some(m)) => m,
                _ => return Err(CliError::Input(format!("{} takes --m, the order of ω", a.object.name()))),
            };
            (Params::from_omega(RootOfUnity::new(m, a.t)?, a.l, a.k), m)
        } else {
            let n = group_order(a.n, a.m)?;
            (Params::from_n_with_power(n, a.t, a.l, a.k)?, n)
        };
        match a.object {
            Object::Rodd if n % 2 == 0 => {
                return Err(CliError::Input(format!("Rodd needs odd n, got n = {n}; use Reven")))
            }
            Object::Reven if n % 2 == 1 => {
                return Err(CliError::Input(format!("Reven needs even n, got n = {n}; use Rodd")))
            }
            Object::Fz if n % 2 == 0 => return Err(CliError::Input(format!("fz needs odd N, got N = {n}"))),
            Object::Rodd | Object::Reven | Object::Rplus | Object::Rminus | Object::Rmu => params.check_coprime()?,
            _ => {}
        }
        let alpha = match (a.object, &a.alpha) {
            (Object::Projector, Some(s)) => Some(parse_alpha(s)?),
            (Object::Projector, None) => return Err(CliError::Input("projector needs --alpha a,b".into())),
            _ => None,
        };
        Ok(Self { object: a.object, params, n, t: a.t, braided: a.braided, alpha })
    }

    fn needs_z(&self) -> bool {
        !matches!(self.object, Object::Projector | Object::Canonical)
    }

    fn evaluate<S: Scalar>(&self, ctx: &S::Ctx, z: Option<&S>, mu: Option<&S>) -> dybe_core::Result<Operator<S>> {
        let p = self.params;
        let z = || z.expect("z resolved");
        let descendant = |d: Descendant<S>| Descendant::new(d.table().clone(), self.braided, "");
        match self.object {
            Object::R6v => six_vertex_r(&p, z()),
            Object::L => l_operator(&p, z()),
            Object::Rodd | Object::Reven => descendant(Descendant::standard(ctx, p)?).at(z()),
            Object::Rplus => descendant(Descendant::plus(ctx, p)?).at(z()),
            Object::Rminus => descendant(Descendant::minus(ctx, p)?).at(z()),
            Object::Rmu => descendant(Descendant::mixed(ctx, p, mu.expect("μ resolved"))?).at(z()),
            Object::Projector => {
                let (a, b) = self.alpha.expect("α resolved");
                let rep = DoubleRep::<S>::with_root(ctx, RootOfUnity::new(self.n, self.t)?)?;
                Ok(projector_closed(&rep, AlphaPair::new(a, b, rep.d()), false)?.matrix)
            }
            Object::Canonical => canonical_for(ctx, &p),
            Object::Fz => FzWeights::matching(ctx, self.n, p.omega)?.limit_closed(z()),
        }
    }

    fn convention(&self) -> String {
        let form = if self.braided { "braided Ř = P·R" } else { "plain R" };
        let (p, d) = (self.params.omega.power(), self.params.omega.order());
        format!("single-power ω = exp(2πi·{p}/{d}); e_i ⊗ e_j at index i·dim₂ + j; {form}")
    }
}

fn to_mp(op: &Operator<Cyclo>, prec: dybe_core::Precision) -> Operator<MpComplex> {
    Operator::from_entries(&prec, op.dim(), op.entries().into_iter().map(|(i, j, v)| (i, j, v.to_mpc(prec))))
}

/// Evaluates the requested object. Projectors, the canonical element and the
/// points `z = 0`, `z = 1` go through the exact backend; other points are
/// evaluated at the requested precision.
pub fn build_record(a: &BuildArgs) -> Result<ExportRecord, CliError> {
    let prec = precision(a.precision)?;
    let plan = Plan::resolve(a)?;
    let z = match (&a.z, plan.needs_z()) {
        (Some(s), true) => Some(parse_complex(s)?),
        (None, true) => return Err(CliError::Input(format!("{} needs --z", a.object.name()))),
        (_, false) => None,
    };
    let mu = match (&a.mu, a.object) {
        (Some(s), Object::Rmu) => Some(parse_complex(s)?),
        (None, Object::Rmu) => return Err(CliError::Input("Rmu needs --mu".into())),
        _ => None,
    };
    let exact_z = match z {
        Some([re, im]) if im == 0.0 && (re == 0.0 || re == 1.0) => Some(re as i64),
        _ => None,
    };
    let exact = a.object != Object::Rmu && (z.is_none() || exact_z.is_some());
    let op = if exact {
        let f = CycloField::new(2 * plan.params.d().max(plan.n));
        let zv = exact_z.map(|v| Cyclo::from_i64(&f, v));
        to_mp(&plan.evaluate(&f, zv.as_ref(), None).map_err(CliError::input)?, prec)
    } else {
        let zv = z.map(|[re, im]| MpComplex::from_f64_parts(&prec, re, im).expect("floats hold f64"));
        let muv = mu.map(|[re, im]| MpComplex::from_f64_parts(&prec, re, im).expect("floats hold f64"));
        plan.evaluate(&prec, zv.as_ref(), muv.as_ref()).map_err(CliError::input)?
    };
    let zmeta = match (z, exact_z) {
        (None, _) => None,
        (Some(_), Some(v)) => Some(ZValue::Symbolic(format!("symbolic-limit-{v}"))),
        (Some([re, im]), None) => Some(ZValue::Point { re, im }),
    };
    let trace = (a.object == Object::Projector).then(|| {
        let t = op.trace().to_c64();
        [t.re, t.im]
    });
    let metadata = Metadata {
        object: a.object.name().to_owned(),
        n: plan.n,
        parity: Parity::of(plan.n),
        convention: plan.convention(),
        root: Root { order: plan.params.omega.order(), power: plan.params.omega.power() },
        z: zmeta,
        dim: op.dim(),
        precision: prec.bits(),
        alpha: plan.alpha.map(|(a, b)| [a, b]),
        mu,
        trace,
    };
    Ok(ExportRecord::new(metadata, &op))
}
