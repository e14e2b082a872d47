//! `hypersens` command-line driver.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypersens::experiments::{self, Column, ScanConfig, ScanFamily};
use hypersens::family::{generate_family, trim_sets, verify_family};
use hypersens::field::{make_field, prime_power_decompose};
use hypersens::hypergraph::HypergraphJson;
use hypersens::property::PropertySpecJson;
use hypersens::sensitivity::{
    self, block_sensitivity_capped, block_sensitivity_global, certify_blocks,
    default_max_block_size, sensitivity_at, CertificateJson, DEFAULT_EXHAUSTIVE_BUDGET,
};
use hypersens::witness::{self, WitnessJson};
use hypersens::{BitString, CliqueSpec, Error, Hypergraph, PropertySpec};

#[derive(Parser)]
#[command(
    name = "hypersens",
    version,
    about = "Sensitivity experiments on hypergraph properties"
)]
struct Cli {
    /// Seed for `ChaCha8Rng::seed_from_u64`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Time budget per exhaustive measurement, in milliseconds.
    #[arg(long, global = true, default_value_t = 60_000)]
    budget_ms: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a property at one input.
    Eval {
        #[command(flatten)]
        prop: PropArgs,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Sensitivity at one input or over all inputs.
    Sens {
        #[command(flatten)]
        prop: PropArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = SensMode::At)]
        mode: SensMode,
    },
    /// Block sensitivity with an optimal certificate, or a certificate check.
    Bsens {
        #[command(flatten)]
        prop: PropArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = BsMode::Exact)]
        mode: BsMode,
        /// Largest minimal block considered (defaults to the property's natural size).
        #[arg(long)]
        max_block_size: Option<usize>,
        /// JSON list of blocks (lists of input positions) for `--mode certify`.
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
    /// Generate and verify a low-intersection set family.
    Family {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        limit: Option<u64>,
        /// Keep only the smallest `trim` points of each set.
        #[arg(long)]
        trim: Option<usize>,
    },
    /// Build a witness input.
    Witness {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        h: Option<usize>,
        /// Emit the compact hex form of the hypergraph.
        #[arg(long)]
        compact: bool,
    },
    /// Sweep `v` and fit exponents of the measured columns.
    Scan {
        #[arg(long, value_enum)]
        property: ScanProperty,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        t: Option<f64>,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["v_from", "v_to"])]
        vs: Vec<usize>,
        #[arg(long, requires = "v_to")]
        v_from: Option<usize>,
        #[arg(long, requires = "v_from")]
        v_to: Option<usize>,
        #[arg(long, default_value_t = 1)]
        v_step: usize,
        /// Comma-separated subset of s_lower,s_exact,bs_lower,bs_exact.
        #[arg(long, value_delimiter = ',', default_value = "s_lower,bs_lower")]
        columns: Vec<String>,
        /// Fill the ms_s / ms_bs columns (makes output time dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Quick checks on small known cases.
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SensMode {
    At,
    Global,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BsMode {
    Exact,
    Capped,
    Global,
    Certify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    TrianglePacking,
    CliquePacking,
    S0,
    S1,
    IsolatedVertex,
    NearClique,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum ScanProperty {
    IsolatedVertex,
    IsolatedTriangle,
    IsolatedClique,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Rubinstein,
    CyclicRubinstein,
    IsolatedVertex,
    IsolatedTriangle,
    IsolatedClique,
}

#[derive(Args)]
struct PropArgs {
    #[arg(long, value_enum, required_unless_present = "spec")]
    property: Option<Variant>,
    /// Property as JSON (`{variant, v, k, i, h | t, rubinstein_k}`).
    #[arg(long, conflicts_with = "property")]
    spec: Option<PathBuf>,
    #[arg(long)]
    v: Option<usize>,
    /// Edge arity, or the block length for Rubinstein variants.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    /// Accept `i = k` for the isolated-clique property.
    #[arg(long)]
    allow_i_eq_k: bool,
}

#[derive(Args)]
struct InputArgs {
    /// zeros|empty, ones|complete, witness, s0-witness, random, a 0/1 literal,
    /// or a path to hypergraph JSON.
    #[arg(long, default_value = "zeros")]
    input: String,
    /// Edge probability for `--input random`.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_json<T: serde::de::DeserializeOwned>(flag: &str, path: &PathBuf) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("{flag}: invalid JSON in {}: {e}", path.display())))
}

impl PropArgs {
    fn resolve(&self) -> CliResult<PropertySpec> {
        let json: PropertySpecJson = match (&self.spec, self.property) {
            (Some(path), _) => read_json("--spec", path)?,
            (None, Some(variant)) => PropertySpecJson {
                variant: variant
                    .to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
                    .to_string(),
                v: self.v,
                k: self.k,
                i: self.i,
                h: self.h,
                t: self.t,
                rubinstein_k: None,
                allow_i_eq_k: self.allow_i_eq_k,
            },
            (None, None) => return Err(usage("--property or --spec is required")),
        };
        Ok(PropertySpec::try_from(&json)?)
    }
}

impl InputArgs {
    fn resolve(&self, p: &PropertySpec, seed: u64) -> CliResult<BitString> {
        let n = p.input_len();
        let x = match self.input.as_str() {
            "zeros" | "empty" => BitString::zeros(n),
            "ones" | "complete" => BitString::ones(n),
            "witness" => one_witness(p)?,
            "s0-witness" => zero_witness(p)?,
            "random" => {
                if !(0.0..=1.0).contains(&self.density) {
                    return Err(usage("--density must lie in [0, 1]"));
                }
                BitString::random(n, self.density, &mut hypersens::seeded_rng(seed))
            }
            s if !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1') => {
                s.parse::<BitString>()?
            }
            path => {
                let j: HypergraphJson = read_json("--input", &PathBuf::from(path))?;
                let g = Hypergraph::try_from(&j)?;
                if p.graph_shape() != Some((g.v(), g.k())) {
                    return Err(Error::SpecMismatch.into());
                }
                g.into_bits()
            }
        };
        if x.len() != n {
            return Err(Error::BadLength {
                expected: n,
                got: x.len(),
            }
            .into());
        }
        Ok(x)
    }
}

/// A 1-input with large sensitivity.
fn one_witness(p: &PropertySpec) -> CliResult<BitString> {
    Ok(match *p {
        PropertySpec::Rubinstein { k } | PropertySpec::CyclicRubinstein { k } => {
            BitString::from_positions(k * k, [0, 1])?
        }
        PropertySpec::IsolatedVertex { v } => {
            witness::build_isolated_vertex_witness(v)?.into_bits()
        }
        _ => {
            let c = p.as_clique().unwrap();
            witness::build_s1_witness(c.v, c.k, c.h)?.into_bits()
        }
    })
}

/// Near-cliques on the disjoint blocks `{0..h-1}, {h..2h-1}, ...`.
fn zero_witness(p: &PropertySpec) -> CliResult<BitString> {
    let c = p
        .as_clique()
        .ok_or_else(|| usage("--input s0-witness needs a clique property"))?;
    let sets: Vec<Vec<u64>> = (0..c.v / c.h)
        .map(|b| ((b * c.h) as u64..((b + 1) * c.h) as u64).collect())
        .collect();
    Ok(witness::build_s0_witness(&sets, &c)?.graph.into_bits())
}

fn parse_blocks(path: &PathBuf) -> CliResult<Vec<Vec<usize>>> {
    read_json("--blocks", path)
}

fn run(cli: &Cli) -> CliResult<String> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err(usage("--format csv is only supported by scan"));
    }
    let budget = Duration::from_millis(cli.budget_ms);
    let value = match &cli.command {
        Command::Eval { prop, input } => {
            let p = prop.resolve()?;
            let x = input.resolve(&p, cli.seed)?;
            serde_json::to_value(p.evaluate(&x)?).unwrap()
        }
        Command::Sens { prop, input, mode } => {
            let p = prop.resolve()?;
            match mode {
                SensMode::At => {
                    let x = input.resolve(&p, cli.seed)?;
                    serde_json::to_value(sensitivity_at(&p, &x)?).unwrap()
                }
                SensMode::Global => {
                    let g = sensitivity::sensitivity_global_until(
                        &p,
                        DEFAULT_EXHAUSTIVE_BUDGET,
                        Some(std::time::Instant::now() + budget),
                    )?;
                    let part = |o: &Option<(usize, BitString)>| match o {
                        Some((s, x)) => json!({"s": s, "argmax": x.to_string()}),
                        None => Value::Null,
                    };
                    json!({
                        "s": g.s,
                        "argmax": g.argmax.to_string(),
                        "s0": part(&g.s0),
                        "s1": part(&g.s1),
                    })
                }
            }
        }
        Command::Bsens {
            prop,
            input,
            mode,
            max_block_size,
            blocks,
        } => {
            let p = prop.resolve()?;
            let cap = max_block_size.unwrap_or_else(|| default_max_block_size(&p));
            match mode {
                BsMode::Global => {
                    let (bs, x) = block_sensitivity_global(
                        &p,
                        DEFAULT_EXHAUSTIVE_BUDGET,
                        Some(std::time::Instant::now() + budget),
                    )?;
                    json!({"bs": bs, "argmax": x.to_string()})
                }
                BsMode::Exact | BsMode::Capped => {
                    let x = input.resolve(&p, cli.seed)?;
                    let r = block_sensitivity_capped(&p, &x, cap)?;
                    if *mode == BsMode::Exact && !r.exact {
                        return Err(Error::BlockSizeBoundHit {
                            lower_bound: r.value,
                            max_block_size: cap,
                        }
                        .into());
                    }
                    let cert = CertificateJson::new(&r.certificate, &x, p.graph_shape())?;
                    let mut v = serde_json::to_value(cert).unwrap();
                    v["bs"] = json!(r.value);
                    v["exact"] = json!(r.exact);
                    v["max_block_size"] = json!(cap);
                    v
                }
                BsMode::Certify => {
                    let path = blocks
                        .as_ref()
                        .ok_or_else(|| usage("--mode certify requires --blocks"))?;
                    let x = input.resolve(&p, cli.seed)?;
                    let cert = certify_blocks(&p, &x, &parse_blocks(path)?)?;
                    serde_json::to_value(CertificateJson::new(&cert, &x, p.graph_shape())?).unwrap()
                }
            }
        }
        Command::Family {
            q,
            d,
            ell,
            limit,
            trim,
        } => {
            let (p, m) = prime_power_decompose(*q).ok_or(Error::NotPrimePower(*q))?;
            let field = make_field(p, m)?;
            let mut fam = generate_family(&field, *d, *ell, *limit)?;
            if let Some(t) = trim {
                fam = trim_sets(&fam, *t)?;
            }
            let report = verify_family(&fam);
            let mut v = serde_json::to_value(&fam).unwrap();
            v["verified"] = json!(report.ok);
            if let Some(violation) = report.violation {
                v["violation"] = serde_json::to_value(violation).unwrap();
            }
            v
        }
        Command::Witness {
            construction,
            v,
            k,
            i,
            h,
            compact,
        } => {
            let w = build_witness(*construction, *v, *k, *i, *h)?;
            let mut value = serde_json::to_value(&w).unwrap();
            if *compact {
                let g = Hypergraph::try_from(&w.graph)?;
                let c = g.to_compact_json();
                value["hex"] = json!(c.hex);
                value.as_object_mut().unwrap().remove("edges");
            }
            value
        }
        Command::Scan {
            property,
            k,
            i,
            h,
            t,
            vs,
            v_from,
            v_to,
            v_step,
            columns,
            timings,
        } => {
            let family = match property {
                ScanProperty::IsolatedVertex => ScanFamily::IsolatedVertex,
                ScanProperty::IsolatedTriangle => ScanFamily::IsolatedTriangle,
                ScanProperty::IsolatedClique => ScanFamily::IsolatedClique {
                    k: *k,
                    i: *i,
                    h: *h,
                    t: *t,
                },
            };
            let vs: Vec<usize> = match (v_from, v_to) {
                (Some(a), Some(b)) => {
                    if *v_step == 0 {
                        return Err(usage("--v-step must be positive"));
                    }
                    (*a..=*b).step_by(*v_step).collect()
                }
                _ => vs.clone(),
            };
            if vs.is_empty() {
                return Err(usage("--vs or --v-from/--v-to must give at least one v"));
            }
            let columns = columns
                .iter()
                .map(|c| {
                    Column::parse(c).map_err(|_| usage(format!("--columns: unknown column {c:?}")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let out = experiments::run_scan(&ScanConfig {
                family,
                vs,
                columns,
                budget,
                timings: *timings,
            })?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if cli.format == Format::Csv {
                for (name, fit) in &out.fits {
                    eprintln!(
                        "fit {name}: slope {:.6} intercept {:.6} r2 {:.6} v {}..{}",
                        fit.slope, fit.intercept, fit.r_squared, fit.v_range.0, fit.v_range.1
                    );
                }
                return Ok(experiments::rows_to_csv(&out.rows)?);
            }
            json!({"rows": out.rows, "fits": out.fits})
        }
        Command::Selftest => {
            let results = experiments::selftest();
            let mut text = String::new();
            let mut failed = 0;
            for (name, ok, detail) in &results {
                if !ok {
                    failed += 1;
                }
                text += &format!("{} {name}: {detail}\n", if *ok { "PASS" } else { "FAIL" });
            }
            if failed > 0 {
                eprint!("{text}");
                return Err(CliError::Domain(Error::InvalidSpec(format!(
                    "{failed} selftest check(s) failed"
                ))));
            }
            return Ok(text);
        }
    };
    Ok(serde_json::to_string_pretty(&value).unwrap() + "\n")
}

fn build_witness(
    construction: Construction,
    v: usize,
    k: usize,
    i: usize,
    h: Option<usize>,
) -> CliResult<WitnessJson> {
    let packing_json = |p: witness::Packing, name: &str| -> CliResult<WitnessJson> {
        let mut g = Hypergraph::empty(p.v, p.k)?;
        for m in &p.members {
            g.add_clique(m)?;
        }
        Ok(WitnessJson::new(
            &g,
            name,
            [
                ("v", json!(p.v)),
                ("k", json!(p.k)),
                ("members", json!(p.members)),
            ],
            Some(p.members.len()),
        ))
    };
    match construction {
        Construction::TrianglePacking => {
            packing_json(witness::triangle_packing(v)?, "triangle-packing")
        }
        Construction::CliquePacking => {
            packing_json(witness::clique_packing(v, k)?, "clique-packing")
        }
        Construction::S1 => {
            let h = h.unwrap_or(k + 1);
            let g = witness::build_s1_witness(v, k, h)?;
            Ok(WitnessJson::new(
                &g,
                "s1",
                [
                    ("v", json!(v)),
                    ("k", json!(k)),
                    ("i", json!(i)),
                    ("h", json!(h)),
                ],
                None,
            ))
        }
        Construction::S0 => {
            let h = h.unwrap_or(k + 1);
            let spec = CliqueSpec::new(v, k, i, h)?;
            let sets: Vec<Vec<u64>> = (0..v / h)
                .map(|b| ((b * h) as u64..((b + 1) * h) as u64).collect())
                .collect();
            let w = witness::build_s0_witness(&sets, &spec)?;
            Ok(WitnessJson::new(
                &w.graph,
                "s0",
                [
                    ("v", json!(v)),
                    ("k", json!(k)),
                    ("i", json!(i)),
                    ("h", json!(h)),
                ],
                Some(w.expected_tuples),
            ))
        }
        Construction::IsolatedVertex => {
            let g = witness::build_isolated_vertex_witness(v)?;
            Ok(WitnessJson::new(
                &g,
                "isolated-vertex",
                [("v", json!(v))],
                None,
            ))
        }
        Construction::NearClique => {
            let c = witness::near_clique_construction(v, k)?;
            Ok(WitnessJson::new(
                &c.witness.graph,
                "near-clique",
                [
                    ("v", json!(v)),
                    ("k", json!(k)),
                    ("i", json!(c.spec.i)),
                    ("h", json!(c.spec.h)),
                    ("q", json!(c.family.q)),
                    ("d", json!(c.family.d)),
                    ("ell", json!(c.family.ell)),
                ],
                Some(c.witness.expected_tuples),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, text) {
                    eprintln!("error: --out: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
