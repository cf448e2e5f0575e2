mod doc;
mod input;

use std::collections::BTreeSet;

use anyhow::{bail, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use fpp::decperm::{
    covered_by_shift, covers_by_shift_with_sets, decperm_of, freeze_set_left, freeze_set_right, inverse_decperm,
    left_cyclic_shift, or_set, right_cyclic_shift, tc_set, unblocked_positions, covers_by_shift,
};
use fpp::flagbuild::quotient_covers_with_sets;
use fpp::linalg::{
    embed_append, flag_minors, is_complete_nonneg_representation, is_reduced_representation, matroid_of_matrix,
};
use fpp::pathgraph::bases_of;
use fpp::perm::{bruhat_leq_subword_oracle, Permutation};
use fpp::pipedream::{all_permutations, construct_fpp, enumerate_fpps, rotate_le};
use fpp::poset::{build_poset, check_self_dual, maximal_chains, missing_covers};
use fpp::positroid::{all_positroids, standardize, standardize_step, unblocked_columns};
use fpp::{guard, BasisSet, DecoratedPermutation, Flavor, PipeDream, Positroid, RationalMatrix};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doc::{Check, Cover, DecpermInfo, Doc, MatrixReport, Report, Shift, Stats};
use crate::input::{load, load_matrix, positroid_of};

const DEFAULT_SEED: u64 = 20240611;

/// Flag positroid pipe dreams, positroid bases and quotient posets.
#[derive(Parser)]
#[command(name = "fpp", version)]
struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct RenderFlags {
    /// Tile letters, one row per line.
    #[arg(long, conflicts_with = "svg")]
    ascii: bool,
    /// SVG drawing.
    #[arg(long)]
    svg: bool,
}

#[derive(Args, Clone)]
struct PositroidArg {
    /// Decorated permutation, or a file holding a pipe dream or positroid.
    input: Option<String>,
    /// Decorated permutation such as 5o1u3u9o2u7o6u4u8u.
    #[arg(long, conflicts_with = "input")]
    decperm: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Representable,
    Matroidal,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Representable => Flavor::Representable,
            FlavorArg::Matroidal => Flavor::Matroidal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Svg,
    Unicode,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build FPP(u, v) for a Bruhat interval u <= v.
    Fpp {
        u: String,
        v: String,
        #[command(flatten)]
        render: RenderFlags,
        /// Cross-check against the subword and Richardson oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Bases of a positroid, a partial pipe dream or a matrix.
    Bases {
        #[command(flatten)]
        positroid: PositroidArg,
        /// Matrix file (JSON or CSV of exact rationals).
        #[arg(long, conflicts_with_all = ["input", "decperm"])]
        matrix: Option<String>,
        /// Restrict to the first k rows.
        #[arg(long)]
        k: Option<usize>,
        /// Cross-check path families against the Le-diagram walk.
        #[arg(long)]
        oracle: bool,
    },
    /// Elementary quotients covering a positroid.
    Covers {
        #[command(flatten)]
        positroid: PositroidArg,
        /// One cover per line.
        #[arg(long)]
        ascii: bool,
        /// Cross-check against cyclic shifts.
        #[arg(long)]
        oracle: bool,
    },
    /// Positroids covered by a positroid.
    CoveredBy {
        #[command(flatten)]
        positroid: PositroidArg,
        #[arg(long)]
        ascii: bool,
        /// Cross-check against appended rows from every lower positroid.
        #[arg(long)]
        oracle: bool,
    },
    /// Right or left cyclic shift of a decorated permutation.
    Shift {
        decperm: String,
        /// Unblocked positions C, comma separated.
        #[arg(long, value_delimiter = ',', required_unless_present = "left", conflicts_with = "left")]
        right: Option<Vec<usize>>,
        /// Left-unblocked positions R, comma separated.
        #[arg(long, value_delimiter = ',')]
        left: Option<Vec<usize>>,
    },
    /// Decorated permutation of a pipe dream.
    Decperm {
        input: String,
        /// Overlines and underlines instead of JSON.
        #[arg(long)]
        unicode: bool,
    },
    /// Poset of positroid quotients on [n].
    Poset {
        n: usize,
        #[arg(long, value_enum, default_value = "representable")]
        flavor: FlavorArg,
        /// Element and maximal chain counts only.
        #[arg(long, conflicts_with = "dot")]
        stats: bool,
        /// Graphviz output; matroidal draws non-representable covers dashed.
        #[arg(long)]
        dot: bool,
        /// Cross-check chain count against FPP enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive checks on [n], or sign checks on a matrix.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random matrices for the embedding check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Matrix file to check instead.
        #[arg(long)]
        matrix: Option<String>,
        /// Flag ranks for --matrix, comma separated.
        #[arg(long, value_delimiter = ',', requires = "matrix")]
        ranks: Option<Vec<usize>>,
        /// Include the Richardson shadow check.
        #[arg(long)]
        oracle: bool,
    },
    /// Draw a pipe dream, positroid, decorated permutation or poset.
    Render {
        input: String,
        #[arg(long, value_enum, default_value = "ascii")]
        to: Format,
        /// Rotated Le diagram of the positroid.
        #[arg(long)]
        le: bool,
    },
    /// Re-read any document and write it in another format.
    Convert {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        to: Format,
    },
}

/// Malformed arguments that clap cannot see.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn main() {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
    match run(cli.cmd) {
        Ok(out) => print!("{out}"),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}\n\n{}", Cli::command().render_long_help());
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json(d: Doc) -> String {
    line(d.to_json())
}

fn positroid(arg: PositroidArg) -> Result<Positroid> {
    match (arg.input, arg.decperm) {
        (_, Some(s)) => Ok(Positroid::from_decperm(&s.parse()?)?),
        (Some(i), None) => positroid_of(load(&i)?),
        (None, None) => usage("a positroid is required: pass a decorated permutation or a file"),
    }
}

fn run(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Fpp { u, v, render, oracle } => fpp_verb(&u, &v, render, oracle),
        Cmd::Bases { positroid: p, matrix, k, oracle } => bases_verb(p, matrix, k, oracle),
        Cmd::Covers { positroid: p, ascii, oracle } => covers_verb(positroid(p)?, ascii, oracle),
        Cmd::CoveredBy { positroid: p, ascii, oracle } => covered_by_verb(positroid(p)?, ascii, oracle),
        Cmd::Shift { decperm, right, left } => shift_verb(&decperm, right, left),
        Cmd::Decperm { input, unicode } => decperm_verb(&input, unicode),
        Cmd::Poset { n, flavor, stats, dot, oracle } => poset_verb(n, flavor.into(), stats, dot, oracle),
        Cmd::Verify { n, seed, samples, matrix, ranks, oracle } => match matrix {
            Some(m) => matrix_verb(&m, ranks),
            None => verify_verb(n, seed, samples, oracle),
        },
        Cmd::Render { input, to, le } => render(load(&input)?, to, le),
        Cmd::Convert { input, to } => render(load(&input)?, to, false),
    }
}

fn render_dream(d: &PipeDream, flags: RenderFlags) -> String {
    if flags.svg {
        d.render_svg()
    } else if flags.ascii {
        d.render_ascii()
    } else {
        json(Doc::Dream(d.clone()))
    }
}

/// `{ sorted z[1..k] : u <= z <= v }` by the subword criterion.
fn richardson_shadow(u: &Permutation, v: &Permutation, k: usize) -> Result<BTreeSet<Vec<usize>>> {
    let mut out = BTreeSet::new();
    for z in all_permutations(u.n()) {
        if bruhat_leq_subword_oracle(u, &z)? && bruhat_leq_subword_oracle(&z, v)? {
            out.insert(z.values()[..k].iter().copied().sorted().collect());
        }
    }
    Ok(out)
}

fn fpp_verb(u: &str, v: &str, flags: RenderFlags, oracle: bool) -> Result<String> {
    let (u, v): (Permutation, Permutation) = (u.parse()?, v.parse()?);
    let built = construct_fpp(&u, &v);
    if oracle {
        guard::check(u.n(), 7)?;
        let comparable = u.n() == v.n() && bruhat_leq_subword_oracle(&u, &v)?;
        if comparable != built.is_ok() {
            bail!("oracle disagrees on whether {u} <= {v}");
        }
        if let Ok(d) = &built {
            for k in 1..=u.n() {
                let got: BTreeSet<Vec<usize>> = bases_of(&d.restrict(k)?)?.bases().iter().cloned().collect();
                if got != richardson_shadow(&u, &v, k)? {
                    bail!("restriction to {k} rows disagrees with the Richardson shadow");
                }
            }
        }
    }
    Ok(render_dream(&built?, flags))
}

fn bases_verb(p: PositroidArg, matrix: Option<String>, k: Option<usize>, oracle: bool) -> Result<String> {
    if let Some(m) = matrix {
        let a = load_matrix(&m)?;
        let Some(k) = k else {
            return usage("--matrix needs --k");
        };
        return Ok(json(Doc::Bases(matroid_of_matrix(&a, k)?)));
    }
    let d = match (p.input, p.decperm) {
        (_, Some(s)) => Positroid::from_decperm(&s.parse()?)?.dle().clone(),
        (Some(i), None) => match load(&i)? {
            Doc::Dream(d) => d,
            other => positroid_of(other)?.dle().clone(),
        },
        (None, None) => return usage("bases needs a positroid, a pipe dream or --matrix"),
    };
    let d = match k {
        Some(k) => d.restrict(k)?,
        None => d,
    };
    let b = bases_of(&d)?;
    if oracle {
        let walk = rotate_le(&Positroid::from_partial(&d)?.dle().clone())?.bases();
        if walk != b.bases().iter().cloned().collect::<BTreeSet<_>>() {
            bail!("path families disagree with the Le-diagram walk");
        }
    }
    Ok(json(Doc::Bases(b)))
}

fn covers_verb(p: Positroid, ascii: bool, oracle: bool) -> Result<String> {
    let covers: Vec<Cover> = quotient_covers_with_sets(&p)?
        .into_iter()
        .map(|(c, q)| Cover { columns: c.into_iter().collect(), decperm: q.decperm() })
        .collect();
    if oracle {
        let pipes: BTreeSet<(Vec<usize>, DecoratedPermutation)> =
            covers.iter().map(|c| (c.columns.clone(), c.decperm.clone())).collect();
        let shifts: BTreeSet<(Vec<usize>, DecoratedPermutation)> = covers_by_shift_with_sets(&p.decperm())?
            .into_iter()
            .map(|(c, q)| (c.into_iter().collect(), q))
            .collect();
        if pipes != shifts {
            bail!("appended rows and cyclic shifts give different covers");
        }
    }
    if ascii {
        Ok(covers.iter().map(|c| line(format!("{} {}", c.columns.iter().join(","), c.decperm))).collect())
    } else {
        Ok(json(Doc::Covers(covers)))
    }
}

fn covered_by_verb(p: Positroid, ascii: bool, oracle: bool) -> Result<String> {
    let mut down = covered_by_shift(&p.decperm())?;
    down.sort();
    if oracle {
        let n = p.n();
        let mut via_rows = Vec::new();
        if p.rank() > 0 {
            for q in &all_positroids(n)?[p.rank() - 1] {
                if quotient_covers_with_sets(q)?.iter().any(|(_, r)| r == &p) {
                    via_rows.push(q.decperm());
                }
            }
        }
        via_rows.sort();
        let via_dual: Vec<DecoratedPermutation> =
            covers_by_shift(&inverse_decperm(&p.decperm()))?.iter().map(inverse_decperm).sorted().collect();
        if via_rows != down || via_dual != down {
            bail!("left shifts disagree with appended rows");
        }
    }
    if ascii {
        Ok(down.iter().map(line).collect())
    } else {
        Ok(json(Doc::DecpermList(down)))
    }
}

fn shift_verb(pi: &str, right: Option<Vec<usize>>, left: Option<Vec<usize>>) -> Result<String> {
    let input: DecoratedPermutation = pi.parse()?;
    let (direction, set) = match (right, left) {
        (Some(c), None) => ("right", c),
        (None, Some(r)) => ("left", r),
        _ => return usage("pass exactly one of --right or --left"),
    };
    let s: BTreeSet<usize> = set.iter().copied().collect();
    let (moved, freeze, result) = if direction == "right" {
        let freeze = freeze_set_right(&input, &s)?;
        (tc_set(&input, &s)?, freeze.clone(), right_cyclic_shift(&input, &freeze)?)
    } else {
        let freeze = freeze_set_left(&input, &s)?;
        (or_set(&input, &s)?, freeze.clone(), left_cyclic_shift(&input, &freeze)?)
    };
    Ok(json(Doc::Shift(Shift {
        input,
        direction: direction.into(),
        set: s.into_iter().collect(),
        moved: moved.into_iter().collect(),
        freeze: freeze.into_iter().collect(),
        result,
    })))
}

fn decperm_verb(input: &str, unicode: bool) -> Result<String> {
    let pi = match load(input)? {
        Doc::Dream(d) => decperm_of(&standardize(&d)?)?,
        other => positroid_of(other)?.decperm(),
    };
    if unicode {
        return Ok(line(pi.to_unicode()));
    }
    Ok(json(Doc::DecpermInfo(info(pi))))
}

fn info(pi: DecoratedPermutation) -> DecpermInfo {
    DecpermInfo {
        unicode: pi.to_unicode(),
        rank: pi.rank(),
        unblocked: unblocked_positions(&pi).into_iter().collect(),
        decperm: pi,
    }
}

fn poset_verb(n: usize, flavor: Flavor, stats: bool, dot: bool, oracle: bool) -> Result<String> {
    let poset = build_poset(n, flavor)?;
    if oracle && flavor == Flavor::Representable && maximal_chains(&poset) != enumerate_fpps(n)?.len() as u128 {
        bail!("maximal chains and FPPs differ in number");
    }
    if stats {
        return Ok(json(Doc::Stats(Stats { elements: poset.element_count(), max_chains: maximal_chains(&poset) })));
    }
    if dot {
        return Ok(match flavor {
            Flavor::Representable => poset.to_dot(&[]),
            Flavor::Matroidal => build_poset(n, Flavor::Representable)?.to_dot(&missing_covers(n)?),
        });
    }
    Ok(json(Doc::from_value(poset.to_json())?))
}

fn check(name: &str, r: Result<()>) -> Check {
    match r {
        Ok(()) => Check { name: name.into(), passed: true, detail: String::new() },
        Err(e) => Check { name: name.into(), passed: false, detail: format!("{e:#}") },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        bail!(msg())
    }
}

fn verify_verb(n: usize, seed: u64, samples: usize, oracle: bool) -> Result<String> {
    guard::check(n, 5)?;
    let fpps = enumerate_fpps(n)?;
    let perms = all_permutations(n);
    let mut checks = vec![
        check("intervals", {
            let mut pairs = 0usize;
            for u in &perms {
                for v in &perms {
                    pairs += usize::from(bruhat_leq_subword_oracle(u, v)?);
                }
            }
            ensure(pairs == fpps.len(), || format!("{} FPPs for {pairs} intervals", fpps.len()))
        }),
        check("elbows", {
            fpps.iter().try_for_each(|d| {
                let (u, v) = (d.pivot_permutation()?, d.exit_permutation()?);
                ensure(d.elbow_count() == v.length() - u.length(), || format!("{u} {v}"))
            })
        }),
        check("covers", {
            all_positroids(n)?.into_iter().flatten().filter(|p| p.rank() < n).try_for_each(|p| {
                let pipes: BTreeSet<DecoratedPermutation> =
                    quotient_covers_with_sets(&p)?.into_iter().map(|(_, q)| q.decperm()).collect();
                let shifts: BTreeSet<DecoratedPermutation> = covers_by_shift(&p.decperm())?.into_iter().collect();
                ensure(pipes == shifts && pipes.len() == (1 << p.unblocked().len()) - 1, || p.to_string())
            })
        }),
        check("standardize", {
            let partial: BTreeSet<PipeDream> =
                fpps.iter().flat_map(|d| (1..=n).filter_map(move |k| d.restrict(k).ok())).collect();
            partial.iter().try_for_each(|d| {
                let b = bases_of(d)?;
                for i in 1..d.rows() {
                    if d.pivots()[i - 1] < d.pivots()[i] {
                        ensure(bases_of(&standardize_step(d, i)?)? == b, || format!("{d}row {i}"))?;
                    }
                }
                let s = standardize(d)?;
                ensure(unblocked_columns(&s)? == unblocked_columns(d)? && s.right_exits()? == d.right_exits()?, || {
                    d.to_string()
                })
            })
        }),
    ];
    let poset = build_poset(n, Flavor::Representable)?;
    checks.push(check("chains", {
        ensure(maximal_chains(&poset) == fpps.len() as u128, || "chain count".into())
    }));
    checks.push(check("self-dual", {
        let s = check_self_dual(&poset)?;
        ensure(s.holds, || format!("{:?}", s.counterexample))
    }));
    checks.push(check("embedding", embedding_samples(seed, samples)));
    if oracle {
        checks.push(check("richardson", {
            fpps.iter().try_for_each(|d| {
                let (u, v) = (d.pivot_permutation()?, d.exit_permutation()?);
                for k in 1..=n {
                    let got: BTreeSet<Vec<usize>> = bases_of(&d.restrict(k)?)?.bases().iter().cloned().collect();
                    ensure(got == richardson_shadow(&u, &v, k)?, || format!("{u} {v} k={k}"))?;
                }
                Ok(())
            })
        }));
    }
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    let out = json(Doc::Report(Report { n, seed, checks }));
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        bail!("failed checks: {}", failed.join(", "))
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Result<RationalMatrix> {
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(rows..=5);
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4))))
                .collect()
        })
        .collect();
    Ok(RationalMatrix::new(data, false)?)
}

fn embedding_samples(seed: u64, samples: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_matrix(&mut rng)?;
        let b = embed_append(&a)?;
        let r = a.rows();
        for s in (0..=a.cols()).combinations(r) {
            let want = match s[0] {
                0 if r == 1 => BigRational::one(),
                0 => a.top(r - 1)?.minor(&s[1..])?,
                _ => a.minor(&s)?,
            };
            ensure(b.minor(&s)? == want, || format!("{s:?} on\n{a}"))?;
        }
    }
    Ok(())
}

fn matrix_verb(path: &str, ranks: Option<Vec<usize>>) -> Result<String> {
    let a = load_matrix(path)?;
    let ranks = ranks.unwrap_or_else(|| (1..=a.rows()).collect());
    let minors = flag_minors(&a, &ranks)?;
    let negative_minors: Vec<(usize, Vec<usize>)> =
        minors.iter().filter(|(_, v)| v.is_negative()).map(|(key, _)| key.clone()).collect();
    let positive_per_rank = ranks.iter().map(|r| minors.iter().any(|((k, _), v)| k == r && v.is_positive())).collect();
    let report = MatrixReport {
        reduced: is_reduced_representation(&a, &ranks),
        complete_nonneg: is_complete_nonneg_representation(&a, &ranks),
        ranks,
        negative_minors,
        positive_per_rank,
    };
    Ok(json(Doc::MatrixReport(report)))
}

fn render(doc: Doc, to: Format, le: bool) -> Result<String> {
    let dream = |d: &PipeDream| -> Result<String> {
        if le {
            let p = Positroid::from_partial(d)?;
            return Ok(rotate_le(p.dle())?.to_ascii());
        }
        match to {
            Format::Ascii => Ok(d.render_ascii()),
            Format::Svg => Ok(d.render_svg()),
            _ => usage("pipe dreams render as json, ascii or svg"),
        }
    };
    match (&doc, to) {
        (_, Format::Json) if !le => Ok(json(doc)),
        (Doc::Dream(d), _) => dream(d),
        (Doc::Positroid(p), _) => dream(p.dle()),
        (Doc::Decperm(pi), Format::Unicode) => Ok(line(pi.to_unicode())),
        (Doc::DecpermInfo(i), Format::Unicode) => Ok(line(i.decperm.to_unicode())),
        (Doc::Decperm(pi), _) => dream(Positroid::from_decperm(pi)?.dle()),
        (Doc::DecpermInfo(i), _) => dream(Positroid::from_decperm(&i.decperm)?.dle()),
        (Doc::DecpermList(ps), Format::Ascii | Format::Unicode) => Ok(ps
            .iter()
            .map(|p| line(if to == Format::Unicode { p.to_unicode() } else { p.to_string() }))
            .collect()),
        (Doc::Poset(p), Format::Dot) => Ok(build_poset(p.n, p.flavor)?.to_dot(&[])),
        (Doc::Matrix(m), Format::Ascii) => Ok(m.to_string()),
        (Doc::Matrix(m), Format::Csv) => Ok(m.data().iter().map(|r| line(r.iter().join(","))).collect()),
        (Doc::Bases(b), Format::Ascii) => Ok(bases_ascii(b)),
        _ => usage("this document has no such rendering"),
    }
}

fn bases_ascii(b: &BasisSet) -> String {
    b.bases().iter().map(|s| line(s.iter().join(if b.n() > 9 { "," } else { "" }))).collect()
}
