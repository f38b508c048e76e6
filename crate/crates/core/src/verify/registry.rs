//! Registry of checked inequalities.

use super::context::Context;
use super::report::{Bound, Status, Verdict};
use super::GraphClass;
use crate::error::Result;
use crate::iso::Method;
use crate::value::{checked_add, checked_div, checked_mul, checked_sub, Quantity, Rational};

/// Constant in the class theorems comparing h_out with β_out.
pub const CLASS_CONSTANT: i64 = 200;
/// Pinned constants of the two-sided spectral estimate for Cayley-type graphs.
pub const UPPER_CONSTANT: (i64, i64) = (1, 8);
pub const LOWER_CONSTANT: (i64, i64) = (1, 640_000);

pub struct InequalityCase {
    pub id: &'static str,
    pub citation: &'static str,
    /// Named constants and spectra the evaluator reads.
    pub inputs: &'static [&'static str],
    eval: fn(&Context) -> Result<Outcome>,
}

impl InequalityCase {
    pub(crate) fn run(&self, ctx: &Context, tol: f64) -> Verdict {
        match (self.eval)(ctx).map(|o| o.decide(tol)) {
            Ok(Decided::NotApplicable(why)) => Verdict::bare(self.id, self.citation, Status::NotApplicable, Some(why)),
            Ok(Decided::Checked(c)) => Verdict {
                id: self.id.to_string(),
                status: c.status,
                lhs: Some(c.lhs),
                rhs: Some(c.rhs),
                margin: Some(c.margin),
                citation: self.citation.to_string(),
                notes: c.notes,
            },
            Err(e) => Verdict::bare(
                self.id,
                self.citation,
                Status::Inconclusive,
                Some(format!("missing input: {e}")),
            ),
        }
    }
}

impl std::fmt::Debug for InequalityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InequalityCase")
            .field("id", &self.id)
            .field("citation", &self.citation)
            .finish()
    }
}

pub fn ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn lookup(id: &str) -> Option<&'static InequalityCase> {
    REGISTRY.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    /// lhs ≥ rhs
    Ge,
    /// lhs ≤ rhs
    Le,
}

/// How far the right-hand side can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trust {
    Sound,
    /// The computed rhs is only an upper bound on the true one.
    RhsUpperBound,
}

struct Route {
    label: &'static str,
    lhs: Quantity,
}

enum Outcome {
    NotApplicable(String),
    OneSided {
        routes: Vec<Route>,
        rel: Rel,
        rhs: Quantity,
        trust: Trust,
        notes: Vec<String>,
    },
    TwoSided {
        lhs: Quantity,
        lower: Quantity,
        upper: Quantity,
        notes: Vec<String>,
    },
}

struct Checked {
    status: Status,
    lhs: Quantity,
    rhs: Bound,
    margin: Quantity,
    notes: Vec<String>,
}

enum Decided {
    NotApplicable(String),
    Checked(Checked),
}

fn holds(margin: &Quantity, rel: Rel, tol: f64) -> bool {
    match (margin.as_exact(), rel) {
        (Some(m), Rel::Ge) => m >= Rational::from_integer(0),
        (Some(m), Rel::Le) => m <= Rational::from_integer(0),
        (None, Rel::Ge) => margin.hi() >= -tol,
        (None, Rel::Le) => margin.lo() <= tol,
    }
}

fn smaller(a: Quantity, b: Quantity) -> Quantity {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => Quantity::Exact(x.min(y)),
        _ if b.approx() < a.approx() => b,
        _ => a,
    }
}

impl Outcome {
    fn decide(self, tol: f64) -> Decided {
        match self {
            Outcome::NotApplicable(why) => Decided::NotApplicable(why),
            Outcome::OneSided {
                routes,
                rel,
                rhs,
                trust,
                mut notes,
            } => {
                let mut worst: Option<(Quantity, Quantity)> = None;
                let mut all_hold = true;
                for r in &routes {
                    let m = r.lhs.sub(&rhs);
                    all_hold &= holds(&m, rel, tol);
                    if routes.len() > 1 {
                        notes.push(format!("{}: lhs {}, margin {}", r.label, r.lhs, m));
                    }
                    let slack = match rel {
                        Rel::Ge => m.approx(),
                        Rel::Le => -m.approx(),
                    };
                    let replace = match &worst {
                        None => true,
                        Some((_, wm)) => {
                            let ws = match rel {
                                Rel::Ge => wm.approx(),
                                Rel::Le => -wm.approx(),
                            };
                            slack < ws
                        }
                    };
                    if replace {
                        worst = Some((r.lhs, m));
                    }
                }
                let (lhs, margin) = worst.expect("at least one route");
                let status = match (all_hold, trust) {
                    (true, _) => Status::Pass,
                    (false, Trust::Sound) => Status::Fail,
                    (false, Trust::RhsUpperBound) => {
                        notes.push("rhs is a heuristic upper bound; the check is undecided".into());
                        Status::Inconclusive
                    }
                };
                Decided::Checked(Checked {
                    status,
                    lhs,
                    rhs: Bound::Single(rhs),
                    margin,
                    notes,
                })
            }
            Outcome::TwoSided {
                lhs,
                lower,
                upper,
                notes,
            } => {
                let below = lhs.sub(&lower);
                let above = upper.sub(&lhs);
                let ok = holds(&below, Rel::Ge, tol) && holds(&above, Rel::Ge, tol);
                Decided::Checked(Checked {
                    status: if ok { Status::Pass } else { Status::Fail },
                    lhs,
                    rhs: Bound::Range { lower, upper },
                    margin: smaller(below, above),
                    notes,
                })
            }
        }
    }
}

fn one(label: &'static str, lhs: Quantity) -> Vec<Route> {
    vec![Route { label, lhs }]
}

fn sound(routes: Vec<Route>, rel: Rel, rhs: Quantity) -> Outcome {
    Outcome::OneSided {
        routes,
        rel,
        rhs,
        trust: Trust::Sound,
        notes: Vec::new(),
    }
}

fn two_sided(lhs: Quantity, lower: Quantity, upper: Quantity) -> Outcome {
    Outcome::TwoSided {
        lhs,
        lower,
        upper,
        notes: Vec::new(),
    }
}

fn with_note(mut o: Outcome, note: impl Into<String>) -> Outcome {
    match &mut o {
        Outcome::OneSided { notes, .. } | Outcome::TwoSided { notes, .. } => notes.push(note.into()),
        Outcome::NotApplicable(_) => {}
    }
    o
}

/// Exact when every input is exact and `exact` does not overflow; floating otherwise.
fn expr<const N: usize>(
    args: [Quantity; N],
    exact: impl Fn([Rational; N]) -> Option<Rational>,
    float: impl Fn([f64; N]) -> f64,
) -> Quantity {
    let rs: Option<Vec<Rational>> = args.iter().map(|q| q.as_exact()).collect();
    if let Some(rs) = rs {
        let arr: [Rational; N] = rs.try_into().expect("length N");
        if let Some(r) = exact(arr) {
            return Quantity::Exact(r);
        }
    }
    Quantity::Float(float(args.map(|q| q.approx())))
}

fn float(x: f64) -> Quantity {
    Quantity::Float(x)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ri(n: usize) -> Rational {
    Rational::from_integer(n as i64)
}

fn sqrt_floor(h: f64) -> f64 {
    ((1.0 + h).sqrt() - 1.0).powi(2)
}

fn regular(ctx: &Context) -> std::result::Result<usize, Outcome> {
    ctx.inst
        .graph
        .regular_degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Outcome::NotApplicable("graph is not regular".into()))
}

fn regular_counting(ctx: &Context) -> std::result::Result<usize, Outcome> {
    let d = regular(ctx)?;
    if !ctx.inst.pi.is_counting() {
        return Err(Outcome::NotApplicable("needs π ≡ 1".into()));
    }
    Ok(d)
}

fn non_bipartite(ctx: &Context) -> std::result::Result<(), Outcome> {
    if ctx.inst.graph.is_bipartite().is_bipartite() {
        Err(Outcome::NotApplicable("graph is bipartite".into()))
    } else {
        Ok(())
    }
}

macro_rules! require {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return Ok(o),
        }
    };
}

/// λ2 = 1 − t_{N−1}.
fn lambda2(ctx: &Context) -> Result<f64> {
    let t = ctx.adjacency()?;
    let n = t.eigenvalues.len();
    Ok(if n < 2 { 0.0 } else { 1.0 - t.eigenvalues[n - 2] })
}

/// 2 − λ_N = 1 + t_1.
fn top_gap(ctx: &Context) -> Result<f64> {
    Ok(1.0 + ctx.adjacency()?.min())
}

fn eval_alon(ctx: &Context) -> Result<Outcome> {
    let dmax = ctx.inst.graph.max_degree();
    let h = ctx.value("h_out")?;
    let rhs = expr(
        [h],
        |[h]| checked_div(checked_mul(h, h)?, checked_mul(ri(2 * dmax), checked_add(ri(2), h)?)?),
        |[h]| h * h / (2.0 * dmax as f64 * (2.0 + h)),
    );
    Ok(sound(one("lambda2", float(lambda2(ctx)?)), Rel::Ge, rhs))
}

fn eval_bht(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular(ctx));
    let h = ctx.value("h_out")?.approx();
    let rhs = float(sqrt_floor(h) / (4.0 * d as f64));
    Ok(sound(one("lambda2", float(lambda2(ctx)?)), Rel::Ge, rhs))
}

fn eval_tbj(ctx: &Context) -> Result<Outcome> {
    require!(regular(ctx));
    let b = ctx.value("beta")?;
    let lower = expr([b], |[b]| checked_div(checked_mul(b, b)?, ri(2)), |[b]| b * b / 2.0);
    let upper = b.scale(ri(2));
    Ok(two_sided(float(top_gap(ctx)?), lower, upper))
}

fn eval_al(ctx: &Context) -> Result<Outcome> {
    let h = ctx.value("h_sigma")?;
    let lower = expr([h], |[h]| checked_div(checked_mul(h, h)?, ri(2)), |[h]| h * h / 2.0);
    let upper = h.scale(ri(2));
    Ok(two_sided(float(ctx.signed()?.min()), lower, upper))
}

fn sandwich(lhs: Quantity, big: Quantity, divisor: usize) -> Outcome {
    let lower = expr([big], |[b]| checked_div(b, ri(divisor)), |[b]| b / divisor as f64);
    two_sided(lhs, lower, big)
}

fn eval_sandwich_edge(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular(ctx));
    Ok(sandwich(ctx.value("h")?, ctx.value("h_out")?, d))
}

fn eval_sandwich_beta(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular(ctx));
    Ok(sandwich(ctx.value("beta")?, ctx.value("beta_out")?, d))
}

fn eval_sandwich_signed(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular_counting(ctx));
    Ok(sandwich(ctx.value("h_sigma")?, ctx.value("h_out_sigma")?, 2 * d))
}

fn eval_prop31(ctx: &Context) -> Result<Outcome> {
    let lhs = ctx.value("h_out_sigma_all_minus")?;
    let rhs = ctx.value("beta_out")?;
    let o = sound(one("h_out_sigma", lhs), Rel::Ge, rhs);
    if ctx.inst.sigma_label != "all-minus" || !ctx.inst.pi.is_counting() {
        return Ok(with_note(o, "evaluated with σ ≡ −1 and π ≡ 1 on the underlying graph"));
    }
    Ok(o)
}

fn eval_lem31(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular_counting(ctx));
    let lambda1 = ctx.signed()?.min().max(0.0);
    let b = ctx.bracket()?;
    let o = sound(one("search", float(b.search_upper())), Rel::Ge, float(2.0 * lambda1));
    Ok(with_note(
        o,
        format!(
            "bracket [{}, {}], 2dλ1 = {}",
            crate::value::format_float(b.lower),
            crate::value::format_float(b.upper),
            crate::value::format_float(2.0 * d as f64 * lambda1)
        ),
    ))
}

/// Upper bounds on λ∞: the search value always, 2dλ1 for regular graphs with π ≡ 1.
fn lambda_inf_routes(ctx: &Context) -> Result<Vec<Route>> {
    let mut routes = Vec::new();
    if let (Some(d), true) = (ctx.inst.graph.regular_degree(), ctx.inst.pi.is_counting()) {
        let lambda1 = ctx.signed()?.min();
        routes.push(Route {
            label: "two_d_lambda1",
            lhs: float(2.0 * d as f64 * lambda1),
        });
    }
    routes.push(Route {
        label: "search",
        lhs: float(ctx.bracket()?.search_upper()),
    });
    Ok(routes)
}

fn eval_thm41(ctx: &Context, name: &'static str) -> Result<Outcome> {
    let h = ctx.value(name)?.approx();
    Ok(sound(lambda_inf_routes(ctx)?, Rel::Ge, float(sqrt_floor(h))))
}

fn eval_thm41_out(ctx: &Context) -> Result<Outcome> {
    eval_thm41(ctx, "h_out_sigma")
}

fn eval_thm41_sym(ctx: &Context) -> Result<Outcome> {
    eval_thm41(ctx, "h_sym_sigma")
}

fn eval_twelfth(ctx: &Context) -> Result<Outcome> {
    let twelfth = |q: Quantity| expr([q], |[h]| checked_div(checked_mul(h, h)?, ri(12)), |[h]| h * h / 12.0);
    let a = twelfth(ctx.value("h_out_sigma")?);
    let b = twelfth(ctx.value("h_sym_sigma")?);
    let rhs = match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => Quantity::Exact(x.max(y)),
        _ if a.approx() >= b.approx() => a,
        _ => b,
    };
    Ok(sound(lambda_inf_routes(ctx)?, Rel::Ge, rhs))
}

fn eval_key1(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular(ctx));
    let b = ctx.value("beta_out")?.approx();
    let rhs = float(sqrt_floor(b) / (2.0 * d as f64));
    Ok(sound(one("top_gap", float(top_gap(ctx)?)), Rel::Ge, rhs))
}

fn eval_gapbeta(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular(ctx));
    let b = ctx.value("beta_out")?;
    let rhs = expr(
        [b],
        |[b]| checked_div(checked_mul(b, b)?, ri(16 * d)),
        |[b]| b * b / (16.0 * d as f64),
    );
    Ok(sound(one("top_gap", float(top_gap(ctx)?)), Rel::Ge, rhs))
}

fn class_check(ctx: &Context) -> Result<Outcome> {
    let h = ctx.value("h_out")?;
    let rhs = ctx.value("beta_out")?.scale(Rational::from_integer(CLASS_CONSTANT));
    let mut o = sound(one("h_out", h), Rel::Le, rhs);
    if ctx.inst.class == GraphClass::Cayley && ctx.inst.identity_in_generators {
        o = with_note(o, "identity lies in S; the bound holds trivially");
    }
    if !ctx.inst.graph.is_connected() {
        o = with_note(o, "graph is disconnected; the bound holds trivially");
    }
    Ok(with_note(o, "proof-extracted constant C = 200"))
}

fn eval_thm51(ctx: &Context) -> Result<Outcome> {
    if ctx.inst.class != GraphClass::Cayley {
        return Ok(Outcome::NotApplicable("not a Cayley graph".into()));
    }
    require!(non_bipartite(ctx));
    class_check(ctx)
}

fn eval_thm52(ctx: &Context) -> Result<Outcome> {
    if ctx.inst.class != GraphClass::CayleySum {
        return Ok(Outcome::NotApplicable("not a Cayley sum graph".into()));
    }
    require!(non_bipartite(ctx));
    class_check(ctx)
}

fn eval_thm53(ctx: &Context) -> Result<Outcome> {
    require!(non_bipartite(ctx));
    if !ctx.vertex_transitive()? {
        return Ok(Outcome::NotApplicable("graph is not vertex-transitive".into()));
    }
    class_check(ctx)
}

/// Regular, non-bipartite, and Cayley, Cayley sum or vertex-transitive.
fn thm11_applicable(ctx: &Context) -> Result<std::result::Result<usize, Outcome>> {
    let d = match regular(ctx) {
        Ok(d) => d,
        Err(o) => return Ok(Err(o)),
    };
    if let Err(o) = non_bipartite(ctx) {
        return Ok(Err(o));
    }
    if ctx.inst.class == GraphClass::Generic && !ctx.vertex_transitive()? {
        return Ok(Err(Outcome::NotApplicable(
            "not a Cayley, Cayley sum or vertex-transitive graph".into(),
        )));
    }
    Ok(Ok(d))
}

fn eval_thm11_upper(ctx: &Context) -> Result<Outcome> {
    let d = require!(thm11_applicable(ctx)?);
    let h = ctx.value("h_out")?;
    let (cn, cd) = UPPER_CONSTANT;
    let rhs = expr(
        [h],
        |[h]| checked_sub(ri(1), checked_div(checked_mul(checked_mul(h, h)?, r(cn, cd))?, ri(d))?),
        |[h]| 1.0 - h * h * cn as f64 / (cd as f64 * d as f64),
    );
    let t = ctx.adjacency()?;
    let n = t.eigenvalues.len();
    let lhs = if n < 2 { t.max() } else { t.eigenvalues[n - 2] };
    Ok(sound(one("t_second_largest", float(lhs)), Rel::Le, rhs))
}

fn eval_thm11_lower(ctx: &Context) -> Result<Outcome> {
    let d = require!(thm11_applicable(ctx)?);
    let h = ctx.value("h_out")?;
    let (cn, cd) = LOWER_CONSTANT;
    let rhs = expr(
        [h],
        |[h]| {
            checked_add(
                ri(0) - ri(1),
                checked_div(checked_mul(checked_mul(h, h)?, r(cn, cd))?, ri(d))?,
            )
        },
        |[h]| -1.0 + h * h * cn as f64 / (cd as f64 * d as f64),
    );
    Ok(sound(one("t_smallest", float(ctx.adjacency()?.min())), Rel::Ge, rhs))
}

fn eval_thm61(ctx: &Context, name: &'static str) -> Result<Outcome> {
    let d = require!(regular_counting(ctx));
    let eta = ctx.constant(name)?;
    let rhs = float(sqrt_floor(2.0 / 5f64.sqrt() * eta.value.approx()));
    let lhs = float(2.0 * d as f64 * ctx.connection_lambda1()?);
    let exact = eta.method == Method::Exact && ctx.eta_is_sphere_exact();
    let trust = if exact { Trust::Sound } else { Trust::RhsUpperBound };
    let mut notes = Vec::new();
    if !exact {
        notes.push(format!("{name} is an upper bound on the sphere-valued minimum"));
    }
    Ok(Outcome::OneSided {
        routes: one("two_d_lambda1", lhs),
        rel: Rel::Ge,
        rhs,
        trust,
        notes,
    })
}

fn eval_thm61_out(ctx: &Context) -> Result<Outcome> {
    eval_thm61(ctx, "eta_star_out")
}

fn eval_thm61_sym(ctx: &Context) -> Result<Outcome> {
    eval_thm61(ctx, "eta_star_sym")
}

fn eval_thm62(ctx: &Context) -> Result<Outcome> {
    let d = require!(regular_counting(ctx));
    if ctx.inst.connection.as_ref().is_some_and(|c| c.cyclic().is_none()) {
        return Ok(Outcome::NotApplicable("connection is not cyclic".into()));
    }
    let h = ctx.constant("eta_star_out")?;
    if h.method != Method::Exact {
        return Err(crate::error::Error::Config(
            "cyclic h_out^σ was not computed exactly".into(),
        ));
    }
    let rhs = float(sqrt_floor(h.value.approx() / 2.0));
    let lhs = float(2.0 * d as f64 * ctx.connection_lambda1()?);
    Ok(sound(one("two_d_lambda1", lhs), Rel::Ge, rhs))
}

pub static REGISTRY: &[InequalityCase] = &[
    InequalityCase {
        id: "ALON",
        citation: "λ2 ≥ h_out² / (2·d_max·(2 + h_out))",
        inputs: &["h_out", "adjacency_spectrum"],
        eval: eval_alon,
    },
    InequalityCase {
        id: "BHT",
        citation: "λ2 ≥ (√(1 + h_out) − 1)² / (4d)",
        inputs: &["h_out", "adjacency_spectrum"],
        eval: eval_bht,
    },
    InequalityCase {
        id: "TBJ",
        citation: "β²/2 ≤ 2 − λ_N ≤ 2β",
        inputs: &["beta", "adjacency_spectrum"],
        eval: eval_tbj,
    },
    InequalityCase {
        id: "AL",
        citation: "(h^σ)²/2 ≤ λ1^σ ≤ 2h^σ",
        inputs: &["h_sigma", "signed_laplacian_spectrum"],
        eval: eval_al,
    },
    InequalityCase {
        id: "SANDWICH_EDGE",
        citation: "h_out/d ≤ h ≤ h_out",
        inputs: &["h", "h_out"],
        eval: eval_sandwich_edge,
    },
    InequalityCase {
        id: "SANDWICH_BETA",
        citation: "β_out/d ≤ β ≤ β_out",
        inputs: &["beta", "beta_out"],
        eval: eval_sandwich_beta,
    },
    InequalityCase {
        id: "SANDWICH_SIGNED",
        citation: "h_out^σ/(2d) ≤ h^σ ≤ h_out^σ",
        inputs: &["h_sigma", "h_out_sigma"],
        eval: eval_sandwich_signed,
    },
    InequalityCase {
        id: "PROP31",
        citation: "h_out^σ ≥ β_out for σ ≡ −1, π ≡ 1",
        inputs: &["h_out_sigma_all_minus", "beta_out"],
        eval: eval_prop31,
    },
    InequalityCase {
        id: "LEM31",
        citation: "2λ1^σ ≤ λ∞^σ ≤ 2d·λ1^σ",
        inputs: &["signed_laplacian_spectrum", "lambda_inf"],
        eval: eval_lem31,
    },
    InequalityCase {
        id: "THM41_OUT",
        citation: "λ∞^σ ≥ (√(1 + h_out^σ) − 1)²",
        inputs: &["h_out_sigma", "signed_laplacian_spectrum", "lambda_inf"],
        eval: eval_thm41_out,
    },
    InequalityCase {
        id: "THM41_SYM",
        citation: "λ∞^σ ≥ (√(1 + h_S^σ) − 1)²",
        inputs: &["h_sym_sigma", "signed_laplacian_spectrum", "lambda_inf"],
        eval: eval_thm41_sym,
    },
    InequalityCase {
        id: "REMARK_TWELFTH",
        citation: "λ∞^σ ≥ max(h_out^σ, h_S^σ)²/12",
        inputs: &["h_out_sigma", "h_sym_sigma", "signed_laplacian_spectrum", "lambda_inf"],
        eval: eval_twelfth,
    },
    InequalityCase {
        id: "KEY1",
        citation: "2 − λ_N = 1 + t_1 ≥ (√(1 + β_out) − 1)² / (2d)",
        inputs: &["beta_out", "adjacency_spectrum"],
        eval: eval_key1,
    },
    InequalityCase {
        id: "GAPBETA",
        citation: "2 − λ_N ≥ β_out² / (16d)",
        inputs: &["beta_out", "adjacency_spectrum"],
        eval: eval_gapbeta,
    },
    InequalityCase {
        id: "THM51",
        citation: "h_out ≤ 200·β_out on non-bipartite Cayley graphs",
        inputs: &["h_out", "beta_out"],
        eval: eval_thm51,
    },
    InequalityCase {
        id: "THM52",
        citation: "h_out ≤ 200·β_out on non-bipartite Cayley sum graphs",
        inputs: &["h_out", "beta_out"],
        eval: eval_thm52,
    },
    InequalityCase {
        id: "THM53",
        citation: "h_out ≤ 200·β_out on non-bipartite vertex-transitive graphs",
        inputs: &["h_out", "beta_out"],
        eval: eval_thm53,
    },
    InequalityCase {
        id: "THM11_UPPER",
        citation: "t_{N−1} ≤ 1 − h_out²/(8d)",
        inputs: &["h_out", "adjacency_spectrum"],
        eval: eval_thm11_upper,
    },
    InequalityCase {
        id: "THM11_LOWER",
        citation: "t_1 ≥ −1 + h_out²/(640000·d)",
        inputs: &["h_out", "adjacency_spectrum"],
        eval: eval_thm11_lower,
    },
    InequalityCase {
        id: "THM61_OUT",
        citation: "2d·λ1^σ ≥ (√(1 + (2/√5)·η*_out) − 1)²",
        inputs: &["eta_star_out", "connection_laplacian_spectrum"],
        eval: eval_thm61_out,
    },
    InequalityCase {
        id: "THM61_SYM",
        citation: "2d·λ1^σ ≥ (√(1 + (2/√5)·η*_S) − 1)²",
        inputs: &["eta_star_sym", "connection_laplacian_spectrum"],
        eval: eval_thm61_sym,
    },
    InequalityCase {
        id: "THM62",
        citation: "2d·λ1^σ ≥ (√(1 + h_out^σ/2) − 1)² for cyclic connections",
        inputs: &["eta_star_out", "connection_laplacian_spectrum"],
        eval: eval_thm62,
    },
];
