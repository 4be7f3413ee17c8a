use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gformal::gf::{gf_dim, gf_reduce, rel_tau0};
use gformal::hopf::{antipode_b, delta_dec, delta_dual, quasi_shuffle_poly};
use gformal::linalg::RelationSpace;
use gformal::maps::tau_linear;
use gformal::qseries::{
    bi_eisenstein_derivative_check, bracket_g, qzeta_poly, qzeta_sz, span_dimension, sz_binomial_identity_check,
    sz_tau_invariance_check, QSeries,
};
use gformal::rational;
use gformal::regularization::{reg_balanced, reg_shuffle, reg_stuffle};
use gformal::schemes::{
    check_bm, check_dm, ihara_mul, linearized_bm0, linearized_dm0, p_project_poly, theta_embed,
    zeta_generating_series, Exact, SchemeReport, ZfAlgebra,
};
use gformal::verify::{run_all, run_suite, Params, SuiteReport};
use gformal::zf::{rel_eds, zf_equal, zf_reduce, ZfElement};
use gformal::{Alphabet, DiamondRule, Poly, TensorPoly, TruncatedSeries, Word};

const DEFAULT_WEIGHT: u32 = 6;
const DEFAULT_ORDER: usize = 50;

#[derive(Parser)]
#[command(name = "gformal")]
#[command(about = "Exact word algebra for formal multiple zeta values and their q-analogues")]
#[command(version)]
struct Cli {
    /// Weight bound for truncations and relation spaces [default: 6]
    #[arg(long, global = true)]
    weight: Option<u32>,

    /// Truncation order of q-series [default: 50]
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Product rule; defaults to the natural rule of the input alphabet
    #[arg(long, global = true, value_enum)]
    rule: Option<Rule>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Shuffle,
    Stuffle,
    Sz,
    Balanced,
}

impl Rule {
    fn name(self) -> &'static str {
        match self {
            Rule::Shuffle => "shuffle",
            Rule::Stuffle => "stuffle",
            Rule::Sz => "sz",
            Rule::Balanced => "balanced",
        }
    }

    fn natural(alphabet: Alphabet) -> Rule {
        match alphabet {
            Alphabet::X => Rule::Shuffle,
            Alphabet::Y => Rule::Stuffle,
            Alphabet::B => Rule::Balanced,
        }
    }

    fn diamond(self) -> DiamondRule {
        DiamondRule::parse(self.name()).expect("known rule name")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// Relations of G^f: span of (v - tau v) *_b u
    Tau,
    /// Relations of Z^f: extended double shuffle
    Eds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QCheck {
    /// zeta_q(k|m) = zeta_q(m'|k') for the sz model
    Tau,
    /// Binomial expansion of the sz coefficients
    Binomial,
    /// q d/dq of the depth-one bi-Eisenstein series
    Eisenstein,
}

#[derive(Subcommand)]
enum Commands {
    /// Quasi-shuffle product of two polynomials
    Product { u: String, v: String },

    /// Coproduct of a word: deconcatenation, or the dual of --rule
    Coproduct { w: String },

    /// Antipode of the balanced Hopf algebra
    Antipode { w: String },

    /// The involution tau on words not starting with b0
    Tau { p: String },

    /// Regularization for the product selected by --rule
    Reg { p: String },

    /// Normal form in G^f
    GfReduce { p: String },

    /// Dimension of the weight piece of G^f
    GfDim,

    /// Relation space of G^f or Z^f in a given weight
    RelSpace {
        #[arg(long, value_enum, default_value_t = Space::Tau)]
        space: Space,

        /// Print a basis of the relations
        #[arg(long)]
        rows: bool,
    },

    /// Normal form in Z^f, e.g. "zeta(2,1) - z[0,0,1]"
    ZfReduce { a: String },

    /// Equality in Z^f up to --weight; exit 1 when unequal
    ZfEqual { a: String, b: String },

    /// The projection p: G^f -> Z^f on a B polynomial
    ProjectP {
        p: String,

        /// Reduce the result modulo the Z^f relations
        #[arg(long)]
        reduce: bool,
    },

    /// Membership test for DM; without a series, the zeta series in Z^f
    CheckDm { series: Option<String> },

    /// Membership test for BM; without a series, theta of the zeta series in Z^f
    CheckBm { series: Option<String> },

    /// The embedding theta: DM -> BM; without a series, the zeta series in Z^f
    Theta { series: Option<String> },

    /// The Ihara product of two X series with constant term 1
    Ihara { g: String, h: String },

    /// Basis of the linearized DM_0 conditions in weight --weight
    LinDm0,

    /// Basis of the linearized BM_0 conditions in weight --weight
    LinBm0,

    /// q-expansion of zeta_q(s1,...,sl) or of a B polynomial
    Qseries {
        arg: String,

        /// Bracket [k1,...,kl] instead of zeta_q
        #[arg(long)]
        bracket: bool,
    },

    /// Numerical identity between q-series; exit 1 when it fails
    Qcheck {
        #[arg(value_enum)]
        kind: QCheck,
        k: String,
        m: String,
    },

    /// Dimension of the span of q-series given as index lists or B polynomials
    SpanDim {
        #[arg(required = true)]
        args: Vec<String>,
    },

    /// Run verification suites; exit 1 when a check fails
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        suite: Option<String>,

        #[arg(long)]
        all: bool,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<gformal::Error> for Failure {
    fn from(e: gformal::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    weight: u32,
    order: usize,
    rule: Option<Rule>,
    format: Format,
}

impl Ctx {
    fn emit(&self, text: impl Display, value: impl Serialize) {
        match self.format {
            Format::Text => println!("{}", text.to_string().trim_end()),
            Format::Json => println!("{}", serde_json::to_string(&value).expect("serializable output")),
        }
    }

    fn rule_for(&self, alphabet: Alphabet) -> Result<DiamondRule, Failure> {
        let rule = self.rule.unwrap_or(Rule::natural(alphabet)).diamond();
        rule.check(alphabet)?;
        Ok(rule)
    }

    fn series(&self, text: &str, alphabet: Alphabet) -> Result<TruncatedSeries, Failure> {
        let p = parse_poly(text, Some(alphabet))?;
        Ok(TruncatedSeries::from_poly(p, self.weight))
    }
}

fn parse_poly(text: &str, default: Option<Alphabet>) -> Result<Poly, Failure> {
    Poly::parse(text, default).map_err(|e| Failure::Usage(format!("{e} in '{text}'")))
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    Word::parse(text, None).map_err(|e| Failure::Usage(format!("{e} in '{text}'")))
}

fn parse_indices(text: &str) -> Result<Vec<u32>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("invalid index '{t}' in '{text}'"))))
        .collect()
}

fn parse_zf(text: &str) -> Result<ZfElement, Failure> {
    ZfElement::parse(text).map_err(|e| Failure::Usage(format!("{e} in '{text}'")))
}

/// Index lists such as `2,0,1` go through the sz model; text with `b` letters is a B polynomial.
fn qseries_arg(text: &str, order: usize) -> Result<QSeries, Failure> {
    if !text.contains('b') {
        Ok(qzeta_sz(&parse_indices(text)?, order)?)
    } else {
        Ok(qzeta_poly(&parse_poly(text, Some(Alphabet::B))?, order)?)
    }
}

fn tensor_json(t: &TensorPoly) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|((u, v), c)| json!([u.letters(), v.letters(), rational::format(c)]))
        .collect();
    json!({ "alphabet": t.alphabet(), "terms": terms })
}

fn zf_series_json(s: &TruncatedSeries<ZfElement>) -> Value {
    let terms: Vec<Value> = s.terms().map(|(w, c)| json!([w.letters(), c])).collect();
    json!({ "alphabet": s.alphabet(), "bound": s.bound(), "terms": terms })
}

fn relation_rows(space: &RelationSpace) -> Vec<Poly> {
    (0..space.dim())
        .map(|i| {
            let terms = space.row_terms(i);
            let alphabet = terms.first().map_or(Alphabet::B, |(w, _)| w.alphabet());
            Poly::from_terms(alphabet, terms).expect("relation rows share one alphabet")
        })
        .collect()
}

fn report_outcome(ctx: &Ctx, report: &SchemeReport) -> Outcome {
    ctx.emit(report, report);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verdict(ctx: &Ctx, label: String, ok: bool) -> Outcome {
    ctx.emit(format!("{label} = {ok}"), json!({ "check": label, "passed": ok }));
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn basis(ctx: &Ctx, name: &str, polys: Vec<Poly>) {
    let mut text = format!("{name} weight {}: dimension {}", ctx.weight, polys.len());
    for p in &polys {
        text.push_str(&format!("\n  {p}"));
    }
    ctx.emit(text, json!({ "weight": ctx.weight, "dim": polys.len(), "basis": polys }));
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        weight: cli.weight.unwrap_or(DEFAULT_WEIGHT),
        order: cli.order.unwrap_or(DEFAULT_ORDER),
        rule: cli.rule,
        format: cli.format,
    };
    match cli.command {
        Commands::Product { u, v } => {
            let default = ctx.rule.and_then(|r| DiamondRule::default_alphabet(r.name()));
            let u = parse_poly(&u, default)?;
            let v = parse_poly(&v, Some(u.alphabet()))?;
            let p = quasi_shuffle_poly(&u, &v, ctx.rule_for(u.alphabet())?)?;
            ctx.emit(&p, &p);
        }
        Commands::Coproduct { w } => {
            let w = parse_word(&w)?;
            let t = match ctx.rule {
                None => delta_dec(&w),
                Some(_) => delta_dual(&w, ctx.rule_for(w.alphabet())?)?,
            };
            ctx.emit(&t, tensor_json(&t));
        }
        Commands::Antipode { w } => {
            let p = antipode_b(&parse_word(&w)?)?;
            ctx.emit(&p, &p);
        }
        Commands::Tau { p } => {
            let p = tau_linear(&parse_poly(&p, Some(Alphabet::B))?)?;
            ctx.emit(&p, &p);
        }
        Commands::Reg { p } => {
            let p = parse_poly(&p, ctx.rule.and_then(|r| DiamondRule::default_alphabet(r.name())))?;
            let rule = ctx.rule.unwrap_or(Rule::natural(p.alphabet()));
            let out = match rule {
                Rule::Shuffle => reg_shuffle(&p)?,
                Rule::Stuffle | Rule::Sz => reg_stuffle(&p)?,
                Rule::Balanced => reg_balanced(&p)?,
            };
            ctx.emit(&out, &out);
        }
        Commands::GfReduce { p } => {
            let g = gf_reduce(&parse_poly(&p, Some(Alphabet::B))?)?;
            ctx.emit(&g, g.representative());
        }
        Commands::GfDim => {
            let d = gf_dim(ctx.weight);
            ctx.emit(d, json!({ "weight": ctx.weight, "dim": d }));
        }
        Commands::RelSpace { space, rows } => {
            let (name, rel) = match space {
                Space::Tau => ("Rel_tau0", rel_tau0(ctx.weight)),
                Space::Eds => ("Rel_EDS", rel_eds(ctx.weight)),
            };
            let mut text = format!(
                "{name} weight {}: ambient {}, relations {}, quotient {}",
                ctx.weight,
                rel.ambient_dim(),
                rel.dim(),
                rel.codim()
            );
            let mut value = json!({
                "space": name,
                "weight": ctx.weight,
                "ambient": rel.ambient_dim(),
                "relations": rel.dim(),
                "quotient": rel.codim(),
            });
            if rows {
                let polys = relation_rows(&rel);
                for p in &polys {
                    text.push_str(&format!("\n  {p}"));
                }
                value["rows"] = json!(polys);
            }
            ctx.emit(text, value);
        }
        Commands::ZfReduce { a } => {
            let r = zf_reduce(&parse_zf(&a)?, ctx.weight)?;
            ctx.emit(&r, &r);
        }
        Commands::ZfEqual { a, b } => {
            let ok = zf_equal(&parse_zf(&a)?, &parse_zf(&b)?, ctx.weight)?;
            verdict(&ctx, format!("zf_equal({a}, {b})"), ok)?;
        }
        Commands::ProjectP { p, reduce } => {
            let mut z = p_project_poly(&parse_poly(&p, Some(Alphabet::B))?, ctx.weight)?;
            if reduce {
                z = zf_reduce(&z, ctx.weight)?;
            }
            ctx.emit(&z, &z);
        }
        Commands::CheckDm { series } => {
            let report = match series {
                Some(s) => check_dm(&ctx.series(&s, Alphabet::X)?, None, &Exact)?,
                None => check_dm(&zeta_generating_series(ctx.weight)?, None, &ZfAlgebra { bound: ctx.weight })?,
            };
            report_outcome(&ctx, &report)?;
        }
        Commands::CheckBm { series } => {
            let report = match series {
                Some(s) => check_bm(&ctx.series(&s, Alphabet::B)?, None, &Exact)?,
                None => {
                    let big = theta_embed(&zeta_generating_series(ctx.weight)?)?;
                    check_bm(&big, None, &ZfAlgebra { bound: ctx.weight })?
                }
            };
            report_outcome(&ctx, &report)?;
        }
        Commands::Theta { series } => match series {
            Some(s) => {
                let big = theta_embed(&ctx.series(&s, Alphabet::X)?)?;
                ctx.emit(&big, &big);
            }
            None => {
                let big = theta_embed(&zeta_generating_series(ctx.weight)?)?;
                ctx.emit(&big, zf_series_json(&big));
            }
        },
        Commands::Ihara { g, h } => {
            let out = ihara_mul(&ctx.series(&g, Alphabet::X)?, &ctx.series(&h, Alphabet::X)?)?;
            ctx.emit(&out, &out);
        }
        Commands::LinDm0 => basis(&ctx, "dm_0", linearized_dm0(ctx.weight)),
        Commands::LinBm0 => basis(&ctx, "bm_0", linearized_bm0(ctx.weight)),
        Commands::Qseries { arg, bracket } => {
            let s = if bracket {
                bracket_g(&parse_indices(&arg)?, ctx.order)?
            } else {
                if let Some(rule) = ctx.rule.filter(|r| *r != Rule::Sz) {
                    return Err(Failure::Usage(format!("qseries supports only --rule sz, got '{}'", rule.name())));
                }
                qseries_arg(&arg, ctx.order)?
            };
            ctx.emit(&s, &s);
        }
        Commands::Qcheck { kind, k, m } => {
            let (ks, ms) = (parse_indices(&k)?, parse_indices(&m)?);
            let ok = match kind {
                QCheck::Tau => sz_tau_invariance_check(&ks, &ms, ctx.order)?,
                QCheck::Binomial => sz_binomial_identity_check(&ks, &ms, ctx.order)?,
                QCheck::Eisenstein => {
                    let single = |v: &[u32], t: &str| match v {
                        [x] => Ok(*x),
                        _ => Err(Failure::Usage(format!("expected a single index, got '{t}'"))),
                    };
                    bi_eisenstein_derivative_check(single(&ks, &k)?, single(&ms, &m)?, ctx.order)?
                }
            };
            let name = match kind {
                QCheck::Tau => "tau",
                QCheck::Binomial => "binomial",
                QCheck::Eisenstein => "eisenstein",
            };
            verdict(&ctx, format!("qcheck {name} ({k}|{m}) to O(q^{})", ctx.order + 1), ok)?;
        }
        Commands::SpanDim { args } => {
            let series = args.iter().map(|a| qseries_arg(a, ctx.order)).collect::<Result<Vec<_>, _>>()?;
            let d = span_dimension(&series)?;
            ctx.emit(d, json!({ "order": ctx.order, "count": series.len(), "dim": d }));
        }
        Commands::Verify { suite, all } => {
            let params = Params { weight: cli.weight, order: cli.order };
            let reports: Vec<SuiteReport> = match suite {
                Some(name) if !all => vec![run_suite(&name, &params)?],
                _ => run_all(&params)?,
            };
            let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            let summary = format!("{passed}/{} suites passed", reports.len());
            ctx.emit(format!("{}\n{summary}", text.join("\n")), &reports);
            if passed != reports.len() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
