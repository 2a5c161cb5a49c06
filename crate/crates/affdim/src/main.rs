//! Command-line surface over the `affdim` library. Every subcommand
//! resolves its flags into a serializable [`JobConfig`]; with `--json`
//! the fully-resolved config is echoed next to the result, and feeding
//! that config back through `affdim run --config` reproduces the run
//! bit-for-bit.

use affdim::digits::parse_spec;
use affdim::empirics::{
    box_count_points, box_count_rects, cantor_product_maps, chaos_game, generate_cover,
    luroth_maps, render, write_csv, write_pgm, write_ppm_overlay, AffineMap2, BoxCountSeries,
};
use affdim::luroth::{
    dim_2d, dim_f_finite, dim_f_infinite, dim_nonautonomous, evaluate_expansion, expand,
    fiber_dimension, luroth_affinity_dimension, osc_example_check, osc_violation_check,
    ExpansionStrategy,
};
use affdim::pressure::{affinity_dimension, AlphabetSpec};
use affdim::spectrum::{realize_1d, realize_2d, SpectrumRequest};
use affdim::{Diagonal2, DigitPair, DigitSetSpec, DimensionResult, Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "affdim", version, about = "Dimensions of planar self-affine Lüroth sets")]
struct Cli {
    /// Emit the resolved config and result as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Affinity dimension of a diagonal alphabet (explicit or Lüroth).
    DimAffinity(DimAffinityArgs),
    /// Hausdorff (and box/packing) dimension of the 1-D set F_J.
    #[command(name = "dim-1d")]
    Dim1d(Dim1dArgs),
    /// Dimension of the planar set A_J via the fiber formula or the
    /// Lüroth affinity-dimension bisection.
    #[command(name = "dim-2d")]
    Dim2d(Dim2dArgs),
    /// Fiber (conditional) dimension for digit alphabets I0, I1.
    DimFiber(DimFiberArgs),
    /// Hausdorff dimension of an eventually periodic non-autonomous set.
    DimNonauto(DimNonautoArgs),
    /// Construct a digit set realizing a target dimension.
    Spectrum(SpectrumArgs),
    /// Signed Lüroth expansion of a point x ∈ (0,1].
    Expand(ExpandArgs),
    /// Evaluate a finite signed Lüroth digit string back to a number.
    Eval(EvalArgs),
    /// Check the open-set-condition certificate (or its violation).
    OscCheck(OscArgs),
    /// Enumerate the depth-m rectangle cover of the attractor.
    Cover(CoverArgs),
    /// Box-count a cover or chaos-game sample and fit the slope.
    Boxcount(BoxcountArgs),
    /// Rasterize the attractor to a PGM (or PPM with sample overlay).
    Render(RenderArgs),
    /// Re-run a job from an echoed JSON config.
    Run(RunArgs),
}

#[derive(Args)]
struct DimAffinityArgs {
    /// Explicit maps as "a,b;a,b;…" (diagonal entries).
    #[arg(long, conflicts_with_all = ["digits", "p"])]
    maps: Option<String>,
    /// Lüroth digit set, e.g. "0:3;1:3" or "*:2..inf!5".
    #[arg(long, requires = "p")]
    digits: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct Dim1dArgs {
    #[arg(long)]
    digits: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct Dim2dArgs {
    /// Full digit set with signs, e.g. "0:2,3;1:3".
    #[arg(long, conflicts_with = "i")]
    digits: Option<String>,
    /// Shorthand for a both-signs digit set: `--i "2..inf"` ≡ `--digits "*:2..inf"`.
    #[arg(long, name = "i")]
    i: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Use the affinity-dimension bisection (finite J only) instead of
    /// the fiber-product formula.
    #[arg(long)]
    affinity: bool,
}

#[derive(Args)]
struct DimFiberArgs {
    /// Digits available on the w < p branch, e.g. "2,3".
    #[arg(long)]
    i0: String,
    /// Digits available on the w ≥ p branch.
    #[arg(long)]
    i1: String,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct DimNonautoArgs {
    /// Periodic part: digit-set specs separated by `|`.
    #[arg(long)]
    schedule: String,
    /// Optional pre-periodic prefix, same format.
    #[arg(long)]
    preperiod: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    target: f64,
    /// Realize the target as a planar dimension in [0,2].
    #[arg(long)]
    two_d: bool,
    #[arg(long, default_value_t = 0)]
    sign: u8,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_digit: u64,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    x: f64,
    #[arg(long, default_value_t = 40)]
    n: usize,
    /// luroth | alternating | bernoulli
    #[arg(long, default_value = "luroth", conflicts_with = "signs")]
    strategy: String,
    /// Prescribed sign sequence, e.g. "0,1,1,0" (cycled).
    #[arg(long)]
    signs: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EvalArgs {
    /// Digit string as "s:d" pairs separated by commas, e.g. "0:3,1:4".
    #[arg(long)]
    digits: String,
}

#[derive(Args)]
struct OscArgs {
    /// Run the exact separation certificate for J = {(0,d),(1,d)}.
    #[arg(long, conflicts_with = "digits")]
    d: Option<u64>,
    /// Run the overflow (violation) check on this digit set.
    #[arg(long)]
    digits: Option<String>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, conflicts_with = "fixture")]
    digits: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 4)]
    depth: u32,
    /// Built-in explicit alphabet: currently `cantor-product`.
    #[arg(long)]
    fixture: Option<String>,
    /// Write rectangles as CSV (x0,y0,width,height).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoxcountArgs {
    #[arg(long, conflicts_with = "fixture")]
    digits: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    fixture: Option<String>,
    /// Count rectangle covers at this depth, or chaos-game samples.
    #[arg(long, default_value_t = 6)]
    depth: u32,
    /// cover | chaos
    #[arg(long, default_value = "cover")]
    source: String,
    #[arg(long, default_value_t = 100_000)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// δ ladder runs over 2^-j for j in delta_min_exp..=delta_max_exp.
    #[arg(long, default_value_t = 4)]
    delta_min_exp: u32,
    #[arg(long, default_value_t = 12)]
    delta_max_exp: u32,
    /// Regression window: drop this many of the largest δ.
    #[arg(long, default_value_t = 2)]
    skip_large: usize,
    /// Regression window: drop this many of the smallest δ.
    #[arg(long, default_value_t = 2)]
    skip_small: usize,
    /// Write the (δ, N_δ) ladder as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, conflicts_with = "fixture")]
    digits: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 512)]
    resolution: u32,
    /// Cover depth; defaults to the smallest depth at which the largest
    /// rectangle side drops below one pixel (within the budget).
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    out: PathBuf,
    /// Overlay this many chaos-game samples (writes PPM instead of PGM).
    #[arg(long, default_value_t = 0)]
    overlay_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file holding the `config` object echoed by a previous run.
    #[arg(long)]
    config: PathBuf,
}

/// Fully-resolved, replayable description of one job.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum JobConfig {
    DimAffinity {
        alphabet: AlphabetSpec,
        tol: f64,
    },
    Dim1d {
        digits: DigitSetSpec,
        tol: f64,
    },
    Dim2d {
        digits: DigitSetSpec,
        p: f64,
        tol: f64,
        affinity: bool,
    },
    DimFiber {
        i0: Vec<u64>,
        i1: Vec<u64>,
        p: f64,
        tol: f64,
    },
    DimNonauto {
        preperiod: Vec<DigitSetSpec>,
        period: Vec<DigitSetSpec>,
        tol: f64,
    },
    Spectrum {
        request: SpectrumRequest,
        two_d: bool,
    },
    Expand {
        x: f64,
        n: usize,
        strategy: ExpansionStrategy,
    },
    Eval {
        digits: Vec<DigitPair>,
    },
    OscCheck {
        d: Option<u64>,
        digits: Option<DigitSetSpec>,
    },
    Cover {
        alphabet: CoverAlphabet,
        depth: u32,
        out: Option<PathBuf>,
    },
    Boxcount {
        alphabet: CoverAlphabet,
        depth: u32,
        source: SampleSource,
        deltas: Vec<f64>,
        skip_large: usize,
        skip_small: usize,
        out: Option<PathBuf>,
    },
    Render {
        alphabet: CoverAlphabet,
        resolution: u32,
        depth: Option<u32>,
        out: PathBuf,
        overlay_points: usize,
        seed: u64,
    },
}

/// Map family for the empirical commands.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum CoverAlphabet {
    Luroth { digits: DigitSetSpec, p: f64 },
    CantorProduct,
}

impl CoverAlphabet {
    fn maps(&self) -> Result<Vec<AffineMap2>> {
        match self {
            CoverAlphabet::Luroth { digits, p } => luroth_maps(digits, *p),
            CoverAlphabet::CantorProduct => Ok(cantor_product_maps()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum SampleSource {
    Cover,
    Chaos { points: usize, seed: u64 },
}

fn parse_digit_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad digit '{t}'")))
        })
        .collect()
}

fn parse_pair_list(text: &str) -> Result<Vec<DigitPair>> {
    text.split(',')
        .map(|t| {
            let (s, d) = t
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("bad digit pair '{t}'")))?;
            let s: u8 = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad sign '{s}'")))?;
            let d: u64 = d
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad digit '{d}'")))?;
            Ok(DigitPair::new(s, d))
        })
        .collect()
}

fn parse_maps(text: &str) -> Result<Vec<Diagonal2>> {
    text.split(';')
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once(',')
                .ok_or_else(|| Error::InvalidInput(format!("bad map '{t}', expected 'a,b'")))?;
            let a: f64 = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad entry '{a}'")))?;
            let b: f64 = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad entry '{b}'")))?;
            Ok(Diagonal2::new(a, b))
        })
        .collect()
}

fn parse_schedule(text: &str) -> Result<Vec<DigitSetSpec>> {
    text.split('|').map(|t| parse_spec(t.trim())).collect()
}

fn cover_alphabet(
    digits: &Option<String>,
    fixture: &Option<String>,
    p: f64,
) -> Result<CoverAlphabet> {
    match (digits, fixture) {
        (Some(d), None) => Ok(CoverAlphabet::Luroth { digits: parse_spec(d)?, p }),
        (None, Some(f)) if f == "cantor-product" => Ok(CoverAlphabet::CantorProduct),
        (None, Some(f)) => Err(Error::InvalidInput(format!("unknown fixture '{f}'"))),
        _ => Err(Error::InvalidInput("give exactly one of --digits / --fixture".into())),
    }
}

fn resolve(command: Command) -> Result<JobConfig> {
    Ok(match command {
        Command::DimAffinity(a) => {
            let alphabet = match (a.maps, a.digits) {
                (Some(m), None) => AlphabetSpec::explicit(parse_maps(&m)?)?,
                (None, Some(d)) => AlphabetSpec::luroth(
                    a.p.ok_or_else(|| Error::InvalidInput("--digits requires --p".into()))?,
                    parse_spec(&d)?,
                )?,
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --maps / --digits".into(),
                    ))
                }
            };
            JobConfig::DimAffinity { alphabet, tol: a.tol }
        }
        Command::Dim1d(a) => JobConfig::Dim1d { digits: parse_spec(&a.digits)?, tol: a.tol },
        Command::Dim2d(a) => {
            let digits = match (a.digits, a.i) {
                (Some(d), None) => parse_spec(&d)?,
                (None, Some(i)) => parse_spec(&format!("*:{i}"))?,
                _ => return Err(Error::InvalidInput("give exactly one of --digits / --i".into())),
            };
            JobConfig::Dim2d { digits, p: a.p, tol: a.tol, affinity: a.affinity }
        }
        Command::DimFiber(a) => JobConfig::DimFiber {
            i0: parse_digit_list(&a.i0)?,
            i1: parse_digit_list(&a.i1)?,
            p: a.p,
            tol: a.tol,
        },
        Command::DimNonauto(a) => JobConfig::DimNonauto {
            preperiod: a.preperiod.as_deref().map(parse_schedule).transpose()?.unwrap_or_default(),
            period: parse_schedule(&a.schedule)?,
            tol: a.tol,
        },
        Command::Spectrum(a) => JobConfig::Spectrum {
            request: SpectrumRequest {
                target: a.target,
                sign: a.sign,
                p: a.p,
                tol: a.tol,
                max_digit: a.max_digit,
            },
            two_d: a.two_d,
        },
        Command::Expand(a) => {
            let strategy = if let Some(signs) = a.signs {
                let signs: Vec<u8> = signs
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u8>()
                            .map_err(|_| Error::InvalidInput(format!("bad sign '{t}'")))
                    })
                    .collect::<Result<_>>()?;
                ExpansionStrategy::Prescribed(signs)
            } else {
                match a.strategy.as_str() {
                    "luroth" => ExpansionStrategy::AlwaysLuroth,
                    "alternating" => ExpansionStrategy::AlwaysAlternating,
                    "bernoulli" => ExpansionStrategy::Bernoulli { p: a.p, seed: a.seed },
                    other => {
                        return Err(Error::InvalidInput(format!("unknown strategy '{other}'")))
                    }
                }
            };
            JobConfig::Expand { x: a.x, n: a.n, strategy }
        }
        Command::Eval(a) => JobConfig::Eval { digits: parse_pair_list(&a.digits)? },
        Command::OscCheck(a) => {
            if a.d.is_none() && a.digits.is_none() {
                return Err(Error::InvalidInput("give one of --d / --digits".into()));
            }
            JobConfig::OscCheck {
                d: a.d,
                digits: a.digits.as_deref().map(parse_spec).transpose()?,
            }
        }
        Command::Cover(a) => JobConfig::Cover {
            alphabet: cover_alphabet(&a.digits, &a.fixture, a.p)?,
            depth: a.depth,
            out: a.out,
        },
        Command::Boxcount(a) => {
            if a.delta_min_exp >= a.delta_max_exp {
                return Err(Error::InvalidInput("need delta_min_exp < delta_max_exp".into()));
            }
            let source = match a.source.as_str() {
                "cover" => SampleSource::Cover,
                "chaos" => SampleSource::Chaos { points: a.points, seed: a.seed },
                other => return Err(Error::InvalidInput(format!("unknown source '{other}'"))),
            };
            JobConfig::Boxcount {
                alphabet: cover_alphabet(&a.digits, &a.fixture, a.p)?,
                depth: a.depth,
                source,
                deltas: (a.delta_min_exp..=a.delta_max_exp).map(|j| 2f64.powi(-(j as i32))).collect(),
                skip_large: a.skip_large,
                skip_small: a.skip_small,
                out: a.out,
            }
        }
        Command::Render(a) => JobConfig::Render {
            alphabet: cover_alphabet(&a.digits, &a.fixture, a.p)?,
            resolution: a.resolution,
            depth: a.depth,
            out: a.out,
            overlay_points: a.overlay_points,
            seed: a.seed,
        },
        Command::Run(a) => {
            let text = std::fs::read_to_string(&a.config)
                .map_err(|e| Error::InvalidInput(format!("cannot read config: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad config: {e}")))?
        }
    })
}

fn dim_value(d: &DimensionResult) -> Value {
    serde_json::to_value(d).expect("DimensionResult serializes")
}

fn print_dim(label: &str, d: &DimensionResult) {
    println!(
        "{label} = {:.12}  bracket [{:.12}, {:.12}]  method {:?}{}{}",
        d.value,
        d.bracket.lo,
        d.bracket.hi,
        d.method,
        if d.flags.exact { "  (exact)" } else { "" },
        if d.flags.requires_osc { "  (upper bound needs open-set condition)" } else { "" },
    );
}

fn smallest_side_below(maps: &[AffineMap2], pixel: f64) -> u32 {
    let worst = maps
        .iter()
        .map(|m| m.linear.a.abs().max(m.linear.b.abs()))
        .fold(0.0f64, f64::max);
    let mut depth = 1;
    while worst.powi(depth as i32) >= pixel && (maps.len() as u64).pow(depth + 1) <= 10_000_000 {
        depth += 1;
    }
    depth
}

fn execute(config: &JobConfig) -> Result<Value> {
    Ok(match config {
        JobConfig::DimAffinity { alphabet, tol } => {
            let d = affinity_dimension(alphabet, *tol)?;
            print_dim("affinity dimension", &d);
            dim_value(&d)
        }
        JobConfig::Dim1d { digits, tol } => {
            if digits.is_finite() {
                let d = dim_f_finite(digits, *tol)?;
                print_dim("dim F_J (Hausdorff = box = packing)", &d);
                json!({ "hausdorff": dim_value(&d), "box_packing": dim_value(&d) })
            } else {
                let (h, b) = dim_f_infinite(digits, *tol)?;
                print_dim("dim_H F_J", &h);
                print_dim("dim_B F_J", &b);
                json!({ "hausdorff": dim_value(&h), "box_packing": dim_value(&b) })
            }
        }
        JobConfig::Dim2d { digits, p, tol, affinity } => {
            let d = if *affinity {
                luroth_affinity_dimension(digits, *p, *tol)?
            } else {
                dim_2d(digits, *p, *tol)?
            };
            print_dim("dim A_J", &d);
            dim_value(&d)
        }
        JobConfig::DimFiber { i0, i1, p, tol } => {
            let d = fiber_dimension(i0, i1, *p, *tol)?;
            print_dim("fiber dimension", &d);
            dim_value(&d)
        }
        JobConfig::DimNonauto { preperiod, period, tol } => {
            let d = dim_nonautonomous(preperiod, period, *tol)?;
            print_dim("non-autonomous dimension", &d);
            dim_value(&d)
        }
        JobConfig::Spectrum { request, two_d } => {
            let (digits, achieved) =
                if *two_d { realize_2d(request)? } else { realize_1d(request)? };
            println!("digit set: {digits}");
            print_dim("achieved dimension", &achieved);
            json!({ "digits": digits, "achieved": dim_value(&achieved) })
        }
        JobConfig::Expand { x, n, strategy } => {
            let digits = expand(*x, strategy, *n)?;
            let back = evaluate_expansion(&digits);
            let rendered: Vec<String> =
                digits.iter().map(|p| format!("{}:{}", p.s, p.d)).collect();
            println!("digits: {}", rendered.join(","));
            println!("round trip: {back:.17} (error {:.3e})", (back - x).abs());
            json!({ "digits": digits, "value": back })
        }
        JobConfig::Eval { digits } => {
            let value = evaluate_expansion(digits);
            println!("value = {value:.17}");
            json!({ "value": value })
        }
        JobConfig::OscCheck { d, digits } => {
            let mut out = serde_json::Map::new();
            if let Some(d) = d {
                let report = osc_example_check(*d)?;
                println!(
                    "d = {}: separation certificate {}",
                    report.d,
                    if report.pass { "holds" } else { "FAILS" }
                );
                for line in &report.chain {
                    println!("  {line}");
                }
                out.insert("certificate".into(), serde_json::to_value(&report).unwrap());
            }
            if let Some(j) = digits {
                let violated = osc_violation_check(j);
                println!(
                    "digit set {j}: measure overflow {}",
                    if violated { "certified (no open set condition)" } else { "not certified" }
                );
                out.insert("violation_certified".into(), Value::Bool(violated));
            }
            Value::Object(out)
        }
        JobConfig::Cover { alphabet, depth, out } => {
            let rects = generate_cover(&alphabet.maps()?, *depth)?;
            println!("{} rectangles at depth {depth}", rects.len());
            if let Some(path) = out {
                let mut w = BufWriter::new(File::create(path)?);
                use std::io::Write;
                writeln!(w, "x0,y0,width,height")?;
                for r in &rects {
                    writeln!(w, "{},{},{},{}", r.x0, r.y0, r.width, r.height)?;
                }
                println!("wrote {}", path.display());
            }
            json!({ "count": rects.len(), "rectangles": rects })
        }
        JobConfig::Boxcount { alphabet, depth, source, deltas, skip_large, skip_small, out } => {
            let maps = alphabet.maps()?;
            let series = match source {
                SampleSource::Cover => {
                    let rects = generate_cover(&maps, *depth)?;
                    box_count_rects(&rects, deltas)?
                }
                SampleSource::Chaos { points, seed } => {
                    let samples = chaos_game(&maps, *points, *seed)?;
                    box_count_points(&samples, deltas)?
                }
            };
            let series = BoxCountSeries::fit(series.entries, *skip_large, *skip_small);
            for &(d, c) in &series.entries {
                println!("delta {d:.6e}  count {c}");
            }
            println!("slope = {:.6}  (rms residual {:.3e})", series.slope, series.fit_residual);
            if let Some(path) = out {
                write_csv(&series, BufWriter::new(File::create(path)?))?;
                println!("wrote {}", path.display());
            }
            serde_json::to_value(&series).unwrap()
        }
        JobConfig::Render { alphabet, resolution, depth, out, overlay_points, seed } => {
            let maps = alphabet.maps()?;
            let depth =
                depth.unwrap_or_else(|| smallest_side_below(&maps, 1.0 / *resolution as f64));
            let grid = render(&maps, *resolution, depth)?;
            let file = BufWriter::new(File::create(out)?);
            if *overlay_points > 0 {
                let samples = chaos_game(&maps, *overlay_points, *seed)?;
                write_ppm_overlay(&grid, &samples, file)?;
            } else {
                write_pgm(&grid, file)?;
            }
            println!("wrote {} ({resolution}x{resolution}, depth {depth})", out.display());
            json!({
                "out": out,
                "resolution": resolution,
                "depth": depth,
                "occupied": grid.pixels.iter().filter(|&&p| p).count(),
            })
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    let config = resolve(cli.command)?;
    if cli.json {
        // human-readable lines still go out first; the JSON document is
        // the last line on stdout
        let result = execute(&config)?;
        let doc = json!({ "config": config, "result": result });
        println!("{}", serde_json::to_string(&doc).expect("JSON output"));
    } else {
        execute(&config)?;
    }
    Ok(())
}

fn main() {
    // route clap usage errors to exit code 1 (invalid input); code 2 is
    // reserved for exceeded enumeration budgets
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        e.print().expect("write clap error");
        std::process::exit(code);
    });
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
