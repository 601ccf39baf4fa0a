//! bqstat: a workbench for the arithmetic statistics of integral binary
//! quartic forms - eligible invariant pairs, GL2(Z) class counts, p-adic
//! densities, class-group 2-torsion averages, and 2-Selmer statistics.
//!
//! Exit codes: 0 success, 1 computational hard error, 2 usage error.
//! Output is CSV (fixed column order, header first) or JSON lines with
//! string-encoded integers; every number is exact (decimal integers and
//! num/den rationals), with closed-form targets alongside where one exists.

use anyhow::{anyhow, bail, Context, Result};
use bqstat_core::cache::ClassCache;
use bqstat_core::classgroup::{self, Signature};
use bqstat_core::enumeration::{self, DiscSign, SearchConfig, TypeFilter};
use bqstat_core::forms::RootType;
use bqstat_core::local::{self, CubicSplit, CUBIC_SPLITS, QUARTIC_SPLITS};
use bqstat_core::selmer::{self, CurveFamily, EllipticCurve};
use bqstat_core::zint::{self, Rat, Z};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "bqstat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    JsonLines,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Stream eligible invariant pairs (I, J) with H < X of one sign.
    Eligible {
        #[arg(long)]
        height_max: Z,
        /// Discriminant sign: "+" or "-".
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign_arg)]
        disc_sign: DiscSign,
        #[command(flatten)]
        out: OutputOpts,
        /// Print only the summary line, not the pairs.
        #[arg(long)]
        summary_only: bool,
    },
    /// Count irreducible GL2(Z) classes with H < X.
    CountClasses {
        #[arg(long)]
        height_max: Z,
        /// Root-type filter: 0, 1, 2+, 2-, 2, or all.
        #[arg(long, default_value = "all", value_parser = parse_type_filter)]
        root_type: TypeFilter,
        /// none or strongly-maximal.
        #[arg(long, default_value = "none", value_parser = parse_sm_filter, action = clap::ArgAction::Set)]
        filter: bool,
        /// Weight classes by 1/r when the stabilizer has order 2r.
        #[arg(long, default_value = "off", value_parser = parse_on_off_arg, action = clap::ArgAction::Set)]
        weighted: bool,
        /// Per-fiber class cache directory (env BQSTAT_CACHE_DIR).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Exact p-adic splitting and maximality densities for one family.
    Densities {
        #[arg(long)]
        prime: Z,
        /// monic-cubic, quartic, general-cubic, or pairs.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// 2-Selmer group of one curve y^2 = x^3 + Ax + B.
    Selmer {
        /// Curve coefficients "A,B".
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Average 2-Selmer size over a family with H'(E) < X.
    SelmerAverage {
        #[arg(long)]
        height_max: Z,
        /// JSON family config; omit for all curves.
        #[arg(long)]
        family: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Class-group 2-torsion averages over maximal monogenized cubic fields.
    Classgroup {
        #[arg(long)]
        height_max: Z,
        /// totally-real or complex.
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        /// on or off: average the narrow group instead of the ordinary one.
        #[arg(long, default_value = "off", value_parser = parse_on_off_arg, action = clap::ArgAction::Set)]
        narrow: bool,
        /// Splitting conditions "p:(sigma)", repeatable, e.g. 2:(12).
        #[arg(long)]
        split: Vec<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// n-monogenized cubic class counts with H < X, n < X^delta.
    Nmono {
        #[arg(long)]
        height_max: Z,
        /// Exact decimal in (0, 0.25], e.g. 0.25.
        #[arg(long)]
        delta: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Decay diagnostics across a height ladder.
    Decay {
        /// Comma-separated ladder, e.g. 1000,10000,100000.
        #[arg(long)]
        ladder: String,
        /// Seed for the sampled box diagnostics.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

struct Emitter {
    format: Format,
    columns: Vec<&'static str>,
    header_done: bool,
}

impl Emitter {
    fn new(format: Format, columns: Vec<&'static str>) -> Self {
        Emitter {
            format,
            columns,
            header_done: false,
        }
    }

    fn row(&mut self, values: &[String]) {
        use std::io::Write;
        assert_eq!(values.len(), self.columns.len());
        // writes ignore broken pipes so `bqstat ... | head` stays quiet
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Csv => {
                if !self.header_done {
                    let _ = writeln!(out, "{}", self.columns.join(","));
                    self.header_done = true;
                }
                let _ = writeln!(out, "{}", values.join(","));
            }
            Format::JsonLines => {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(values)
                    .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                    .collect();
                let _ = writeln!(out, "{}", serde_json::Value::Object(obj));
            }
        }
    }
}

fn rat_str(r: Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn parse_sign_arg(s: &str) -> std::result::Result<DiscSign, String> {
    match s {
        "+" | "plus" | "positive" => Ok(DiscSign::Positive),
        "-" | "minus" | "negative" => Ok(DiscSign::Negative),
        _ => Err(format!("disc-sign must be + or -, got {s:?}")),
    }
}

fn parse_type_filter(s: &str) -> std::result::Result<TypeFilter, String> {
    match s {
        "all" => Ok(TypeFilter::All),
        "0" => Ok(TypeFilter::Only(RootType::FourReal)),
        "1" => Ok(TypeFilter::Only(RootType::TwoReal)),
        "2+" => Ok(TypeFilter::Only(RootType::NoneRealPositive)),
        "2-" => Ok(TypeFilter::Only(RootType::NoneRealNegative)),
        "2" => Ok(TypeFilter::Definite),
        other => Err(format!("unknown root type {other:?}")),
    }
}

fn parse_sm_filter(s: &str) -> std::result::Result<bool, String> {
    match s {
        "none" => Ok(false),
        "strongly-maximal" => Ok(true),
        other => Err(format!("unknown filter {other:?}")),
    }
}

fn parse_on_off_arg(s: &str) -> std::result::Result<bool, String> {
    match s {
        "on" | "true" => Ok(true),
        "off" | "false" => Ok(false),
        other => Err(format!("expected on or off, got {other:?}")),
    }
}

fn parse_signature(s: &str) -> std::result::Result<Signature, String> {
    match s {
        "totally-real" => Ok(Signature::TotallyReal),
        "complex" => Ok(Signature::Complex),
        other => Err(format!("signature must be totally-real or complex, got {other:?}")),
    }
}

/// Exact decimal like "0.25" to a reduced fraction (1, 4).
fn parse_delta(s: &str) -> Result<(u32, u32)> {
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        bail!("empty delta");
    }
    let digits = format!("{int}{frac}");
    let num: u64 = digits.parse().context("delta must be a decimal number")?;
    let den = 10u64.pow(frac.len() as u32);
    if num == 0 {
        return Ok((0, 1));
    }
    let g = gcd64(num, den);
    Ok(((num / g) as u32, (den / g) as u32))
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

fn x56(x: Z) -> f64 {
    (x as f64).powf(5.0 / 6.0)
}

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

fn run(cli: Cli) -> Result<()> {
    let cfg = SearchConfig::default();
    match cli.command {
        Command::Eligible {
            height_max,
            disc_sign,
            out,
            summary_only,
        } => {
            let sign = disc_sign;
            let mut em = Emitter::new(out.format, vec!["i", "j"]);
            let mut count: Z = 0;
            enumeration::for_each_eligible_pair(height_max, sign, &mut |p| {
                count += 1;
                if !summary_only {
                    em.row(&[p.i.to_string(), p.j.to_string()]);
                }
            });
            let target = match sign {
                DiscSign::Positive => "8/135",
                DiscSign::Negative => "32/135",
            };
            let tval = match sign {
                DiscSign::Positive => 8.0 / 135.0,
                DiscSign::Negative => 32.0 / 135.0,
            };
            eprintln!(
                "count={count} N/X^(5/6)={:.6} target {target}={:.6}",
                count as f64 / x56(height_max),
                tval
            );
            Ok(())
        }
        Command::CountClasses {
            height_max,
            root_type,
            filter,
            weighted,
            cache,
            out,
        } => {
            let tf = root_type;
            let strongly_maximal = filter;
            let cache_dir = cache.or_else(|| std::env::var_os("BQSTAT_CACHE_DIR").map(Into::into));
            let counts = run_count_with_cache(
                height_max,
                tf,
                strongly_maximal,
                weighted,
                &cfg,
                cache_dir.as_deref(),
            )?;
            let mut em = Emitter::new(
                out.format,
                vec!["root_type", "count", "weighted", "ratio", "target"],
            );
            let targets = [
                ("0", 4.0 * ZETA2 / 135.0, "4*zeta(2)/135"),
                ("1", 32.0 * ZETA2 / 135.0, "32*zeta(2)/135"),
                ("2+", 4.0 * ZETA2 / 135.0, "4*zeta(2)/135 (half of i=2)"),
                ("2-", 4.0 * ZETA2 / 135.0, "4*zeta(2)/135 (half of i=2)"),
            ];
            for (k, (label, tval, tname)) in targets.iter().enumerate() {
                em.row(&[
                    label.to_string(),
                    counts.by_type[k].to_string(),
                    rat_str(counts.weighted[k]),
                    format!("{:.6}", counts.by_type[k] as f64 / x56(height_max)),
                    format!("{tname}={tval:.6}"),
                ]);
            }
            eprintln!(
                "fibers={} reducible_classes={}",
                counts.fibers, counts.reducible_classes
            );
            Ok(())
        }
        Command::Densities { prime, family, out } => run_densities(prime, &family, out.format),
        Command::Selmer { curve, out } => {
            let (a, b) = curve
                .split_once(',')
                .ok_or_else(|| anyhow!("--curve expects A,B"))?;
            let a: Z = a.trim().parse().context("bad A")?;
            let b: Z = b.trim().parse().context("bad B")?;
            let e = EllipticCurve::new(a, b).map_err(|e| anyhow!(e.to_string()))?;
            let report = selmer::selmer_size(&e, &cfg).map_err(|e| anyhow!(e.to_string()))?;
            let mut em = Emitter::new(
                out.format,
                vec!["element", "identity", "classes"],
            );
            for (k, el) in report.elements.iter().enumerate() {
                let reps: Vec<String> = el
                    .classes
                    .iter()
                    .map(|(f, cert)| {
                        let ps: Vec<String> = cert
                            .primes
                            .iter()
                            .map(|(p, s)| format!("{p}:{}", if *s { "ok" } else { "no" }))
                            .collect();
                        format!("{f} [R:{} {}]", if cert.real { "ok" } else { "no" }, ps.join(" "))
                    })
                    .collect();
                em.row(&[
                    k.to_string(),
                    el.is_identity.to_string(),
                    reps.join(" | "),
                ]);
            }
            eprintln!(
                "curve=({a},{b}) fiber=({},{}) selmer_size={} insoluble_classes={}",
                report.fiber.i,
                report.fiber.j,
                report.size(),
                report.insoluble_classes
            );
            Ok(())
        }
        Command::SelmerAverage {
            height_max,
            family,
            out,
        } => {
            let fam = match family {
                None => CurveFamily::all(),
                Some(path) => load_family(&path)?,
            };
            let stats = selmer::selmer_average(&fam, height_max, &cfg)
                .map_err(|e| anyhow!(e.to_string()))?;
            let mut em = Emitter::new(
                out.format,
                vec![
                    "x",
                    "curves",
                    "selmer_total",
                    "mean",
                    "predicted_mean",
                    "excluded_non_rigid",
                    "excluded_two_torsion",
                ],
            );
            let predicted = Rat::from_integer(1) + selmer::mass_ratio_product(100, &fam);
            em.row(&[
                stats.x.to_string(),
                stats.curves.to_string(),
                stats.selmer_total.to_string(),
                rat_str(stats.mean),
                rat_str(predicted),
                stats.excluded_non_rigid.to_string(),
                stats.excluded_two_torsion.to_string(),
            ]);
            eprintln!(
                "mean={:.4} (predicted {}), histogram={:?}",
                rat_f64(stats.mean),
                rat_str(predicted),
                stats.size_histogram
            );
            Ok(())
        }
        Command::Classgroup {
            height_max,
            signature,
            narrow,
            split,
            out,
        } => {
            let sig = signature;
            if narrow && sig == Signature::Complex {
                bail!("the narrow and ordinary groups coincide for complex fields");
            }
            let mut conditions = Vec::new();
            for s in &split {
                let (p, sigma) = s
                    .split_once(':')
                    .ok_or_else(|| anyhow!("--split expects p:(sigma)"))?;
                let p: Z = p.parse().context("bad prime")?;
                let sigma = CubicSplit::parse(sigma)
                    .ok_or_else(|| anyhow!("unknown cubic splitting type {sigma:?}"))?;
                conditions.push((p, sigma));
            }
            let stats = classgroup::mcc_averages(height_max, sig, &conditions, &cfg);
            let (mean, target) = match (sig, narrow) {
                (Signature::TotallyReal, false) => (stats.mean_cl2(), "3/2"),
                (Signature::TotallyReal, true) => (stats.mean_cl2_plus(), "5/2"),
                (Signature::Complex, _) => (stats.mean_cl2(), "2"),
            };
            let mut em = Emitter::new(
                out.format,
                vec![
                    "x",
                    "fields",
                    "sum_cl2",
                    "sum_cl2_plus",
                    "mean",
                    "target",
                    "skipped_nonmaximal",
                    "skipped_reducible",
                ],
            );
            em.row(&[
                stats.x.to_string(),
                stats.fields.to_string(),
                stats.sum_cl2.to_string(),
                stats.sum_cl2_plus.to_string(),
                format!("{mean:.6}"),
                target.to_string(),
                stats.skipped_nonmaximal.to_string(),
                stats.skipped_reducible.to_string(),
            ]);
            Ok(())
        }
        Command::Nmono {
            height_max,
            delta,
            out,
        } => {
            let (dn, dd) = parse_delta(&delta)?;
            let (n0, n1) = enumeration::n_monogenized_counts(height_max, dn, dd)
                .map_err(|e| anyhow!(e.to_string()))?;
            let exponent = 5.0 / 6.0 + 2.0 * (dn as f64 / dd as f64) / 3.0;
            let scale = (height_max as f64).powf(exponent);
            let mut em = Emitter::new(
                out.format,
                vec!["disc_sign", "count", "ratio", "target"],
            );
            em.row(&[
                "+".into(),
                n0.to_string(),
                format!("{:.6}", n0 as f64 / scale),
                format!("4/45={:.6}", 4.0 / 45.0),
            ]);
            em.row(&[
                "-".into(),
                n1.to_string(),
                format!("{:.6}", n1 as f64 / scale),
                format!("16/45={:.6}", 16.0 / 45.0),
            ]);
            Ok(())
        }
        Command::Decay { ladder, seed, out } => {
            let rungs: Vec<Z> = ladder
                .split(',')
                .map(|s| s.trim().parse().context("bad ladder entry"))
                .collect::<Result<_>>()?;
            let rows = enumeration::decay_diagnostics(&rungs, seed, &cfg);
            let mut em = Emitter::new(
                out.format,
                vec![
                    "x",
                    "monic_reducible",
                    "quartic_box_reducible",
                    "big_stabilizer",
                ],
            );
            for r in rows {
                em.row(&[
                    r.x.to_string(),
                    format!("{}/{}", r.monic_reducible.0, r.monic_reducible.1),
                    format!(
                        "{}/{}",
                        r.quartic_box_reducible.0, r.quartic_box_reducible.1
                    ),
                    format!("{}/{}", r.big_stabilizer.0, r.big_stabilizer.1),
                ]);
            }
            Ok(())
        }
    }
}

fn load_family(path: &std::path::Path) -> Result<CurveFamily> {
    let text = std::fs::read_to_string(path).context("reading family config")?;
    let v: serde_json::Value = serde_json::from_str(&text).context("parsing family config")?;
    if v.get("all").and_then(|a| a.as_bool()) == Some(true) {
        return Ok(CurveFamily::all());
    }
    let mut fam = CurveFamily::default();
    let cons = v
        .get("constraints")
        .and_then(|c| c.as_array())
        .ok_or_else(|| anyhow!("family config needs a constraints array or all:true"))?;
    for c in cons {
        let m = c
            .get("modulus")
            .and_then(|m| m.as_i64())
            .ok_or_else(|| anyhow!("constraint needs a modulus"))? as Z;
        let residues = c
            .get("residues")
            .and_then(|r| r.as_array())
            .ok_or_else(|| anyhow!("constraint needs residues"))?;
        let mut allowed = Vec::new();
        for r in residues {
            let pair = r
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| anyhow!("residue entries are [a, b] pairs"))?;
            allowed.push((
                pair[0].as_i64().unwrap_or(0) as Z,
                pair[1].as_i64().unwrap_or(0) as Z,
            ));
        }
        if allowed.is_empty() {
            bail!("constraint with empty residue set");
        }
        fam.constraints.push((m, allowed));
    }
    Ok(fam)
}

/// Fold class counts over fibers, reading and extending a per-fiber cache.
fn run_count_with_cache(
    x: Z,
    tf: TypeFilter,
    strongly_maximal: bool,
    weighted: bool,
    cfg: &SearchConfig,
    cache_dir: Option<&std::path::Path>,
) -> Result<enumeration::ClassCounts> {
    let Some(dir) = cache_dir else {
        return Ok(enumeration::count_quartic_classes(
            x,
            tf,
            strongly_maximal,
            weighted,
            cfg,
        ));
    };
    std::fs::create_dir_all(dir).context("creating cache directory")?;
    let path = dir.join("classes.cache");
    let mut cache = if path.exists() {
        let loaded = ClassCache::load(&path).map_err(|e| anyhow!(e.to_string()))?;
        if loaded.matches(cfg) {
            loaded
        } else {
            ClassCache::new(cfg)
        }
    } else {
        ClassCache::new(cfg)
    };
    let mut fibers = enumeration::eligible_pairs_vec(x, DiscSign::Positive);
    fibers.extend(enumeration::eligible_pairs_vec(x, DiscSign::Negative));
    let mut counts = enumeration::ClassCounts {
        weighted: [zint::rat(0, 1); 4],
        ..Default::default()
    };
    for pair in fibers {
        if strongly_maximal && !enumeration::fiber_is_maximal(pair).unwrap_or(false) {
            continue;
        }
        let reps = match cache.get(pair.i, pair.j) {
            Some(reps) => reps.clone(),
            None => {
                let classes = enumeration::fiber_classes_certified(pair, cfg);
                let reps: Vec<_> = classes.iter().map(|c| c.rep).collect();
                cache.insert(pair.i, pair.j, reps.clone());
                reps
            }
        };
        counts.fibers += 1;
        for rep in reps {
            if !bqstat_core::roots::is_irreducible_q(&rep) {
                counts.reducible_classes += 1;
                continue;
            }
            let rt = bqstat_core::roots::root_type(&rep).map_err(|e| anyhow!(e.to_string()))?;
            if !type_accepts(tf, rt) {
                continue;
            }
            let idx = enumeration::type_index(rt);
            counts.by_type[idx] += 1;
            if weighted {
                let order = bqstat_core::reduction::stabilizer_order_z(&rep) as Z;
                counts.weighted[idx] = counts.weighted[idx] + zint::rat(2, order);
            }
        }
    }
    cache.save(&path).map_err(|e| anyhow!(e.to_string()))?;
    Ok(counts)
}

fn type_accepts(tf: TypeFilter, rt: RootType) -> bool {
    match tf {
        TypeFilter::All => true,
        TypeFilter::Only(t) => rt == t,
        TypeFilter::Definite => matches!(
            rt,
            RootType::NoneRealPositive | RootType::NoneRealNegative
        ),
    }
}

fn run_densities(p: Z, family: &str, format: Format) -> Result<()> {
    if !zint::is_prime(p) {
        bail!("{p} is not prime");
    }
    let mut em = Emitter::new(
        format,
        vec!["predicate", "density", "target", "status"],
    );
    let check = |em: &mut Emitter, name: String, got: Rat, target: Rat| {
        em.row(&[
            name,
            rat_str(got),
            rat_str(target),
            if got == target { "OK".into() } else { "MISMATCH".into() },
        ]);
    };
    match family {
        "monic-cubic" => {
            for sigma in CUBIC_SPLITS {
                let got = local::density_split_monic(p, sigma);
                check(&mut em, format!("{sigma}"), got, local::formula_split_monic(p, sigma));
            }
            let got = local::density_maximal_monic(p, None).map_err(|e| anyhow!(e.to_string()))?;
            check(&mut em, "maximal".into(), got, local::formula_maximal_monic(p));
            for sigma in CUBIC_SPLITS {
                let got = local::density_maximal_monic(p, Some(sigma))
                    .map_err(|e| anyhow!(e.to_string()))?;
                check(
                    &mut em,
                    format!("{sigma} & maximal"),
                    got,
                    local::formula_maximal_split_monic(p, sigma),
                );
            }
        }
        "quartic" => {
            let got = local::density_strongly_maximal_quartic(p, None)
                .map_err(|e| anyhow!(e.to_string()))?;
            check(&mut em, "strongly-maximal".into(), got, local::formula_sm_quartic(p));
            for theta in QUARTIC_SPLITS {
                let got = local::density_strongly_maximal_quartic(p, Some(theta))
                    .map_err(|e| anyhow!(e.to_string()))?;
                check(
                    &mut em,
                    format!("{theta} & strongly-maximal"),
                    got,
                    local::formula_sm_split_quartic(p, theta),
                );
            }
        }
        "general-cubic" => {
            let got = local::density_maximal_general_cubic(p, None)
                .map_err(|e| anyhow!(e.to_string()))?;
            check(
                &mut em,
                "maximal".into(),
                got,
                local::formula_maximal_general_cubic(p),
            );
        }
        "pairs" => {
            if p != 2 {
                bail!("the pair family is budgeted at p = 2 only");
            }
            let got = local::density_strongly_maximal_pairs_p2();
            check(&mut em, "strongly-maximal".into(), got, local::formula_sm_pairs(2));
        }
        other => bail!("unknown family {other:?}"),
    }
    Ok(())
}
