//! `partspread`: command-line front end over the `partspread` library.
//!
//! Exit codes: 0 when every verdict is pass, info or finding; 1 when some
//! verdict fails; 2 on usage errors and tripped resource guards.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use partspread::approx::{
    check_dominance, minimize_t_intersecting, reduction_sequence, spread_approximate_with, verify_approx,
};
use partspread::count::{bell, count_profiled, stirling2, tilde_bell, u_kl};
use partspread::encoding::{edges_family, parts_family};
use partspread::extremal::{
    canonical_family_with, check_conjecture_instance, max_compatible_family, parse_catalog, run_catalog_entry,
    CanonicalSpec, CATALOG_HEADER,
};
use partspread::guards::Guards;
use partspread::partition::{
    count_derangements_with, enumerate_into_blocks_with, enumerate_partitions_with, enumerate_profiled_with,
    Partition, Profile,
};
use partspread::report::{CheckReport, Format, Record, Value, Verdict};
use partspread::scalar::parse_ratio;
use partspread::setfam::SetFamily;
use partspread::spread::{
    find_max_violating_with, find_spread_subfamily_with, find_sunflower_with, is_r_spread_with, spread_factor_with,
    weak_spread_with,
};
use partspread::verify::{
    check_bell_ratio, check_dobinski, check_dobinski_sweep, check_encoded_spreadness, check_no_singleton_bound,
    check_nonintersect_count, check_nonintersect_sweep, check_stirling_growth, check_tao_containment, Encoded,
};
use partspread::{Error, Ratio};

#[derive(Parser)]
#[command(name = "partspread", version, about = "Spreadness, peeling and extremal checks for set partitions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = OutFormat::Table, global = true)]
    format: OutFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long = "guard-enum-n", global = true, help = "Largest n for full partition enumeration")]
    guard_enum_n: Option<u64>,
    #[arg(long = "guard-enum-count", global = true, help = "Largest number of partitions a restricted enumeration may produce")]
    guard_enum_count: Option<u64>,
    #[arg(long = "guard-candidates", global = true, help = "Largest number of candidate sets the spreadness scan may examine")]
    guard_candidates: Option<u64>,
    #[arg(long = "guard-clique-vertices", global = true, help = "Largest compatibility graph handed to the clique oracle")]
    guard_clique_vertices: Option<u64>,
    #[arg(long = "guard-max-cliques", global = true, help = "Largest number of maximum cliques collected for uniqueness")]
    guard_max_cliques: Option<u64>,
    #[arg(long = "guard-cover-universe", global = true, help = "Universe size below which covering numbers are always attempted")]
    guard_cover_universe: Option<u64>,
    #[arg(long = "guard-cover-members", global = true, help = "Member count below which covering numbers are attempted on any universe")]
    guard_cover_members: Option<u64>,
    #[arg(long = "guard-sunflower-members", global = true, help = "Largest family handed to the sunflower search")]
    guard_sunflower_members: Option<u64>,
    #[arg(long = "guard-lemma-search", global = true, help = "Largest search space for the no-spread-subfamily check")]
    guard_lemma_search: Option<u64>,
}

impl Global {
    fn guards(&self) -> Guards {
        let mut g = Guards::default();
        let overrides = [
            self.guard_enum_n,
            self.guard_enum_count,
            self.guard_candidates,
            self.guard_clique_vertices,
            self.guard_max_cliques,
            self.guard_cover_universe,
            self.guard_cover_members,
            self.guard_sunflower_members,
            self.guard_lemma_search,
        ];
        for (name, v) in Guards::NAMES.iter().zip(overrides) {
            if let Some(v) = v {
                g.set(name, v);
            }
        }
        g
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Table,
    Records,
}

/// Parameters shared by the subcommands; each command reads the ones it needs.
#[derive(Args, Default)]
struct Params {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Spread parameter, as p/q or a decimal.
    #[arg(long)]
    r: Option<String>,
    /// Ambient spreadness for peeling verification, as p/q.
    #[arg(long)]
    r0: Option<String>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    /// Block sizes, e.g. 2,2,3.
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long = "s-max")]
    s_max: Option<usize>,
    #[arg(long = "l-max")]
    l_max: Option<usize>,
    #[arg(long = "n-cap")]
    n_cap: Option<usize>,
    /// Series terms beyond n for a Dobinski sweep.
    #[arg(long)]
    extra: Option<usize>,
    /// Petal count for sunflower search.
    #[arg(long)]
    petals: Option<usize>,
    /// Set family in text form.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Ambient set family in text form.
    #[arg(long)]
    ambient: Option<PathBuf>,
    /// Generate the family from partitions instead of reading it.
    #[arg(long, value_enum)]
    gen: Option<GenKind>,
    /// Encoding of generated partitions; enumerate prints partitions without it.
    #[arg(long, value_enum)]
    encode: Option<Encoding>,
    /// Use the family of n singletons on [n].
    #[arg(long)]
    singletons: Option<usize>,
    /// Comma-separated element list, e.g. 1,2.
    #[arg(long = "t-set")]
    t_set: Option<String>,
    /// A partition such as 13|24|56.
    #[arg(long)]
    y: Option<String>,
    /// A partition such as 12|34.
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Setting for encoded checks and oracles.
    #[arg(long, value_enum)]
    setting: Option<SettingArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Bell,
    Blocks,
    Profiled,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Encoding {
    Parts,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum SettingArg {
    Bell,
    Blocks,
    Profiled,
    KlEdges,
    Partial,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form partition counts.
    Count {
        #[arg(value_enum)]
        what: CountWhat,
        #[command(flatten)]
        p: Params,
    },
    /// List partitions, optionally as an encoded set family.
    Enumerate {
        #[arg(value_enum)]
        kind: GenKind,
        #[command(flatten)]
        p: Params,
    },
    /// Spreadness of a set family.
    Spread {
        #[arg(value_enum)]
        op: SpreadOp,
        #[command(flatten)]
        p: Params,
    },
    /// Spread approximation by peeling, with optional verification.
    Approximate {
        #[command(flatten)]
        p: Params,
    },
    /// Minimization, reduction sequence and dominance of core families.
    Reduce {
        #[arg(value_enum)]
        op: ReduceOp,
        #[command(flatten)]
        p: Params,
    },
    /// Exact maximum intersecting families.
    Extremal {
        #[arg(value_enum)]
        op: ExtremalOp,
        #[command(flatten)]
        p: Params,
    },
    /// Numeric verification of the counting bounds.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        #[command(flatten)]
        p: Params,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountWhat {
    Bell,
    TildeBell,
    Stirling,
    Profiled,
    UKl,
    Derangements,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpreadOp {
    Factor,
    Weak,
    Check,
    Violator,
    Subfamily,
    Sunflower,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceOp {
    Minimize,
    Sequence,
    Dominance,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtremalOp {
    Conjecture,
    Oracle,
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyCheck {
    BellRatio,
    Dobinski,
    NoSingleton,
    Stirling,
    Encoded,
    Tao,
    Nonintersect,
}

/// What a command produced: text plus the verdict that sets the exit code.
struct Output {
    text: String,
    verdict: Verdict,
}

impl Output {
    fn plain(text: String) -> Self {
        Output {
            text,
            verdict: Verdict::Info,
        }
    }

    fn report(rep: &CheckReport, f: Format) -> Self {
        Output {
            text: rep.render(f),
            verdict: rep.verdict(),
        }
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> anyhow::Result<T> {
    v.clone().ok_or_else(|| anyhow!("missing required flag --{flag}"))
}

fn ratio_flag(v: &Option<String>, flag: &str) -> anyhow::Result<Ratio> {
    parse_ratio(&need(v, flag)?).with_context(|| format!("--{flag}"))
}

fn numbers(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| anyhow!("bad number `{x}`")))
        .collect()
}

fn partitions(kind: GenKind, p: &Params, g: &Guards) -> anyhow::Result<Vec<Partition>> {
    Ok(match kind {
        GenKind::Bell => enumerate_partitions_with(need(&p.n, "n")?, g)?,
        GenKind::Blocks => enumerate_into_blocks_with(need(&p.n, "n")?, need(&p.l, "l")?, g)?,
        GenKind::Profiled => enumerate_profiled_with(&need(&p.profile, "profile")?.parse::<Profile>()?, g)?,
        GenKind::Uniform => enumerate_profiled_with(&Profile::uniform(need(&p.k, "k")?, need(&p.l, "l")?)?, g)?,
    })
}

fn encode(parts: &[Partition], enc: Encoding) -> anyhow::Result<SetFamily> {
    let n = parts.first().map_or(0, Partition::n);
    Ok(match enc {
        Encoding::Edges => edges_family(n, parts)?.1,
        Encoding::Parts => parts_family(parts)?.1,
    })
}

fn read_family(path: &PathBuf) -> anyhow::Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SetFamily::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The family named by `--family`, `--singletons` or `--gen`.
fn family(p: &Params, g: &Guards) -> anyhow::Result<SetFamily> {
    if let Some(path) = &p.family {
        return read_family(path);
    }
    if let Some(n) = p.singletons {
        return Ok(SetFamily::new(n, (0..n).map(partspread::bitset::ElementSet::singleton))?);
    }
    if let Some(kind) = p.gen {
        return encode(&partitions(kind, p, g)?, p.encode.unwrap_or(Encoding::Parts));
    }
    bail!("give a family with --family, --singletons or --gen")
}

fn ambient(p: &Params, f: &SetFamily) -> anyhow::Result<SetFamily> {
    match &p.ambient {
        Some(path) => read_family(path),
        None => Ok(f.clone()),
    }
}

fn run_count(what: CountWhat, p: &Params, g: &Guards) -> anyhow::Result<Output> {
    let v = match what {
        CountWhat::Bell => bell(need(&p.n, "n")?),
        CountWhat::TildeBell => tilde_bell(need(&p.n, "n")?),
        CountWhat::Stirling => stirling2(need(&p.n, "n")?, need(&p.l, "l")?),
        CountWhat::Profiled => count_profiled(&need(&p.profile, "profile")?.parse::<Profile>()?),
        CountWhat::UKl => u_kl(need(&p.k, "k")?, need(&p.l, "l")?),
        CountWhat::Derangements => count_derangements_with(&need(&p.partition, "partition")?.parse::<Partition>()?, g)?,
    };
    Ok(Output::plain(format!("{v}\n")))
}

fn run_enumerate(kind: GenKind, p: &Params, g: &Guards) -> anyhow::Result<Output> {
    let parts = partitions(kind, p, g)?;
    match p.encode {
        Some(enc) => Ok(Output::plain(encode(&parts, enc)?.to_text())),
        None => Ok(Output::plain(parts.iter().map(|q| format!("{q}\n")).collect())),
    }
}

fn run_spread(op: SpreadOp, p: &Params, g: &Guards, f: Format) -> anyhow::Result<Output> {
    let fam = family(p, g)?;
    let params = format!("|F|={} N={}", fam.len(), fam.universe_size());
    let mut rep = CheckReport::new(format!("spread-{}", spread_op_name(op)), params.clone());
    match op {
        SpreadOp::Factor => {
            let sr = spread_factor_with(&fam, g)?;
            let w = sr.witness.map_or("-".into(), |w| w.to_string());
            rep.push(Record::info(
                "spread-factor",
                format!("{params} witness={w} scanned={}", sr.scanned),
                sr.r_star.map_or(Value::Text("inf".into()), |r| Value::Text(r.to_string())),
            ));
        }
        SpreadOp::Weak => {
            let t = need(&p.t, "t")?;
            let ws = weak_spread_with(&fam, t, g)?;
            let w = ws.witness.map_or("-".into(), |w| w.to_string());
            rep.push(Record::info(
                "weak-spread",
                format!("{params} t={t} T={} |A(T)|={} witness={w}", ws.t_set, ws.t_count),
                ws.r.map_or(Value::Text("inf".into()), |r| Value::Text(r.to_string())),
            ));
        }
        SpreadOp::Check => {
            let r = ratio_flag(&p.r, "r")?;
            let (ok, w) = is_r_spread_with(&fam, &r, g)?;
            let w = w.map_or("-".into(), |w| w.to_string());
            rep.push(Record::info("is-r-spread", format!("{params} r={r} witness={w}"), Value::Text(ok.to_string())));
        }
        SpreadOp::Violator => {
            let r = ratio_flag(&p.r, "r")?;
            let x = find_max_violating_with(&fam, &r, g)?;
            rep.push(Record::info(
                "max-violator",
                format!("{params} r={r} |F(X)|={}", fam.count_containing(&x)),
                Value::Text(x.to_string()),
            ));
        }
        SpreadOp::Subfamily => {
            let alpha = ratio_flag(&p.r, "r")?;
            let (x, sub) = find_spread_subfamily_with(&fam, &alpha, g)?;
            rep.push(Record::info(
                "spread-subfamily",
                format!("{params} alpha={alpha} |F[X]|={}", sub.len()),
                Value::Text(x.to_string()),
            ));
        }
        SpreadOp::Sunflower => {
            let l = need(&p.petals, "petals")?;
            let text = match find_sunflower_with(&fam, l, g)? {
                Some(sf) => {
                    let petals: Vec<String> = sf.petals.iter().map(|p| p.to_string()).collect();
                    format!("core={} petals={}", sf.core, petals.join(","))
                }
                None => "none".into(),
            };
            rep.push(Record::info("sunflower", format!("{params} petals={l}"), Value::Text(text)));
        }
    }
    Ok(Output::report(&rep, f))
}

fn spread_op_name(op: SpreadOp) -> &'static str {
    match op {
        SpreadOp::Factor => "factor",
        SpreadOp::Weak => "weak",
        SpreadOp::Check => "check",
        SpreadOp::Violator => "violator",
        SpreadOp::Subfamily => "subfamily",
        SpreadOp::Sunflower => "sunflower",
    }
}

fn run_approximate(p: &Params, g: &Guards, f: Format) -> anyhow::Result<Output> {
    let fam = family(p, g)?;
    let r = ratio_flag(&p.r, "r")?;
    let q = need(&p.q, "q")?;
    let res = spread_approximate_with(&fam, &r, q, g)?;
    let mut rep = CheckReport::new("approximate", format!("r={r} q={q} |F|={}", fam.len()));
    for (i, st) in res.trace.iter().enumerate() {
        rep.push(Record::new(
            "peel-step",
            format!("i={i} S={} |F^i|={} peeled={}", st.core, st.family_size, st.peeled),
            Value::int(fam_star_size(&res, i, st.peeled)),
            Value::Rat(st.threshold.clone()),
            None,
            Verdict::Info,
        ));
    }
    rep.push(Record::info("remainder", format!("q={q}"), Value::int(res.remainder.len())));
    if let (Some(_), Some(t)) = (&p.r0, p.t) {
        let r0 = ratio_flag(&p.r0, "r0")?;
        let a = ambient(p, &fam)?;
        let (vrep, _) = verify_approx(&res, &fam, &a, &r, &r0, q, t, g)?;
        rep.extend(vrep);
    }
    Ok(Output::report(&rep, f))
}

/// `|F^i[S_i]|` for a peeled step, zero otherwise.
fn fam_star_size(res: &partspread::approx::ApproxResult, i: usize, peeled: bool) -> u64 {
    if !peeled {
        return 0;
    }
    let idx = res.trace[..i].iter().filter(|s| s.peeled).count();
    res.core_families.get(idx).map_or(0, |f| f.len() as u64)
}

fn run_reduce(op: ReduceOp, p: &Params, g: &Guards, f: Format) -> anyhow::Result<Output> {
    let s = family(p, g)?;
    let t = need(&p.t, "t")?;
    match op {
        ReduceOp::Minimize => {
            let q = p.q.unwrap_or_else(|| s.max_size());
            Ok(Output::plain(minimize_t_intersecting(&s, t, q)?.to_text()))
        }
        ReduceOp::Sequence => {
            let a = ambient(p, &s)?;
            let q = need(&p.q, "q")?;
            let r = match &p.r {
                Some(v) => Some(partspread::spread::RootRatio::new(parse_ratio(v)?, 1)),
                None => None,
            };
            let red = reduction_sequence(&a, &s, q, t, r, g)?;
            let mut rep = red.report.clone();
            for (i, st) in red.steps.iter().enumerate() {
                rep.note(format!("T_{i} = {} W_{i} = {}", members(&st.t_family), members(&st.w_family)));
            }
            Ok(Output::report(&rep, f))
        }
        ReduceOp::Dominance => {
            let a = ambient(p, &s)?;
            let eps = ratio_flag(&p.eps, "eps")?;
            let r = match &p.r {
                Some(v) => Some(partspread::spread::RootRatio::new(parse_ratio(v)?, 1)),
                None => None,
            };
            let d = check_dominance(&a, &s, t, &eps, r, g)?;
            Ok(Output::report(&d.report, f))
        }
    }
}

fn members(s: &SetFamily) -> String {
    let v: Vec<String> = s.sorted_members().iter().map(|m| m.to_string()).collect();
    if v.is_empty() {
        "{}".into()
    } else {
        v.join(" ")
    }
}

fn run_extremal(op: ExtremalOp, p: &Params, g: &Guards, f: Format) -> anyhow::Result<Output> {
    match op {
        ExtremalOp::Conjecture => {
            let out = check_conjecture_instance(need(&p.k, "k")?, need(&p.l, "l")?, need(&p.t, "t")?, g)?;
            Ok(Output::report(&out.report, f))
        }
        ExtremalOp::Oracle => {
            let t = need(&p.t, "t")?;
            let spec = match need(&p.setting, "setting")? {
                SettingArg::Bell => CanonicalSpec::Bell { n: need(&p.n, "n")?, t },
                SettingArg::Blocks => CanonicalSpec::Blocks {
                    n: need(&p.n, "n")?,
                    l: need(&p.l, "l")?,
                    t,
                },
                SettingArg::Partial => CanonicalSpec::partial_kl(need(&p.k, "k")?, need(&p.l, "l")?, (1..=t).collect())?,
                SettingArg::Profiled => CanonicalSpec::Profiled {
                    profile: need(&p.profile, "profile")?.parse()?,
                    anchors: (1..=t).map(|i| vec![i]).collect(),
                },
                SettingArg::KlEdges => bail!("oracle settings are bell, blocks, partial and profiled"),
            };
            let (canon, size) = canonical_family_with(&spec, g)?;
            let pred = spec.predicate();
            let res = max_compatible_family(&spec.universe(g)?, pred, g)?;
            let params = format!("n={} {pred}", spec.n());
            let mut rep = CheckReport::new("oracle", params.clone());
            rep.push(Record::new(
                "canonical-is-clique",
                params.clone(),
                Value::int(canon.len() as u64),
                Value::Absent,
                None,
                Verdict::from_bool(pred.is_clique(&canon)),
            ));
            rep.push(Record::new(
                "oracle",
                format!("{params} oracle={} canonical={size} nodes={}", res.max_size, res.nodes),
                Value::int(res.max_size as u64),
                Value::count(&size),
                None,
                Verdict::Info,
            ));
            Ok(Output::report(&rep, f))
        }
        ExtremalOp::Catalog => {
            let path = need(&p.catalog, "catalog")?;
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let mut out = format!("{CATALOG_HEADER}\n");
            let mut verdict = Verdict::Pass;
            for e in parse_catalog(&text)? {
                let res = run_catalog_entry(&e, g)?;
                if res.status == "mismatch" || res.status == "canonical-not-clique" {
                    verdict = Verdict::Fail;
                }
                out.push_str(&format!("{res}\n"));
            }
            Ok(Output { text: out, verdict })
        }
    }
}

fn encoded_setting(p: &Params) -> anyhow::Result<Encoded> {
    Ok(match need(&p.setting, "setting")? {
        SettingArg::Bell => Encoded::Bell { n: need(&p.n, "n")? },
        SettingArg::Blocks => Encoded::Blocks {
            n: need(&p.n, "n")?,
            l: need(&p.l, "l")?,
            t: need(&p.t, "t")?,
        },
        SettingArg::Profiled => {
            let profile: Profile = match (&p.profile, p.k, p.l) {
                (Some(s), _, _) => s.parse()?,
                (None, Some(k), Some(l)) => Profile::uniform(k, l)?,
                _ => bail!("profiled setting needs --profile or --k and --l"),
            };
            Encoded::Profiled {
                profile,
                t: need(&p.t, "t")?,
            }
        }
        SettingArg::KlEdges => Encoded::KlEdges {
            k: need(&p.k, "k")?,
            l: need(&p.l, "l")?,
        },
        SettingArg::Partial => bail!("encoded settings are bell, blocks, profiled and kl-edges"),
    })
}

fn run_verify(check: VerifyCheck, p: &Params, gl: &Global, g: &Guards, f: Format) -> anyhow::Result<Output> {
    let rep = match check {
        VerifyCheck::BellRatio => check_bell_ratio(need(&p.n_max, "n-max")?)?,
        VerifyCheck::Dobinski => match (p.n, p.n_max) {
            (Some(n), _) => check_dobinski(n, p.s_max.unwrap_or(n + 60))?,
            (None, Some(n_max)) => check_dobinski_sweep(n_max, p.extra.unwrap_or(100))?,
            _ => bail!("dobinski needs --n or --n-max"),
        },
        VerifyCheck::NoSingleton => check_no_singleton_bound(need(&p.s_max, "s-max")?)?,
        VerifyCheck::Stirling => check_stirling_growth(need(&p.l_max, "l-max")?, need(&p.n_cap, "n-cap")?)?,
        VerifyCheck::Encoded => check_encoded_spreadness(&encoded_setting(p)?, g)?,
        VerifyCheck::Tao => {
            let fam = family(p, g)?;
            check_tao_containment(
                &fam,
                &ratio_flag(&p.r, "r")?,
                need(&p.m, "m")?,
                &ratio_flag(&p.delta, "delta")?,
                p.trials.unwrap_or(10_000),
                gl.seed,
                g,
            )?
        }
        VerifyCheck::Nonintersect => {
            let (k, l, t) = (need(&p.k, "k")?, need(&p.l, "l")?, need(&p.t, "t")?);
            match &p.y {
                Some(y) => {
                    let t_set = match &p.t_set {
                        Some(s) => numbers(s)?,
                        None => (1..=t).collect(),
                    };
                    check_nonintersect_count(k, l, t, &t_set, &y.parse()?, g)?
                }
                None => check_nonintersect_sweep(k, l, t, g)?,
            }
        }
    };
    Ok(Output::report(&rep, f))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let g = cli.global.guards();
    let f = match cli.global.format {
        OutFormat::Table => Format::Table,
        OutFormat::Records => Format::Records,
    };
    match &cli.cmd {
        Cmd::Count { what, p } => run_count(*what, p, &g),
        Cmd::Enumerate { kind, p } => run_enumerate(*kind, p, &g),
        Cmd::Spread { op, p } => run_spread(*op, p, &g, f),
        Cmd::Approximate { p } => run_approximate(p, &g, f),
        Cmd::Reduce { op, p } => run_reduce(*op, p, &g, f),
        Cmd::Extremal { op, p } => run_extremal(*op, p, &g, f),
        Cmd::Verify { check, p } => run_verify(*check, p, &cli.global, &g, f),
    }
}

/// Guard, domain, precondition and parse errors are usage errors; a failed
/// integrity check is a failing verdict.
fn exit_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Integrity(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &out.text).with_context(|| format!("writing {}", path.display())),
                None => match std::io::stdout().write_all(out.text.as_bytes()) {
                    // a closed reader such as `head` is not an error
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                    _ => Ok(()),
                },
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.verdict == Verdict::Fail { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e))
        }
    }
}
