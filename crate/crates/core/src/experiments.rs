//! Scaling sweeps: one row of lower bounds and exact values per vertex count,
//! CSV I/O and per-column exponent fits.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::boolfn::MAX_TABLE_VARS;
use crate::error::{Error, Result};
use crate::fit::{fit_exponent, FitResult};
use crate::hypergraph::binomial;
use crate::property::{clique_size_for, CliqueSpec, PropertySpec};
use crate::sensitivity::{
    block_sensitivity_global, certify_blocks, sensitivity_at, sensitivity_global_until,
};
use crate::witness::{
    build_isolated_vertex_witness, build_s1_witness, clique_packing, triangle_packing,
};

/// Default time budget per (v, column).
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

/// One sweep row. Missing measurements are empty CSV cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub v: usize,
    pub n: u64,
    pub s_lower: Option<u64>,
    pub s_exact: Option<u64>,
    pub bs_lower: Option<u64>,
    pub bs_exact: Option<u64>,
    pub ms_s: Option<u64>,
    pub ms_bs: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    SLower,
    SExact,
    BsLower,
    BsExact,
}

impl Column {
    pub const ALL: [Column; 4] = [
        Column::SLower,
        Column::SExact,
        Column::BsLower,
        Column::BsExact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::SLower => "s_lower",
            Column::SExact => "s_exact",
            Column::BsLower => "bs_lower",
            Column::BsExact => "bs_exact",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown column {s:?}")))
    }

    fn get(self, row: &ScalingRow) -> Option<u64> {
        match self {
            Column::SLower => row.s_lower,
            Column::SExact => row.s_exact,
            Column::BsLower => row.bs_lower,
            Column::BsExact => row.bs_exact,
        }
    }

    fn set(self, row: &mut ScalingRow, value: u64) {
        let slot = match self {
            Column::SLower => &mut row.s_lower,
            Column::SExact => &mut row.s_exact,
            Column::BsLower => &mut row.bs_lower,
            Column::BsExact => &mut row.bs_exact,
        };
        *slot = Some(value);
    }
}

/// A property family indexed by the vertex count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanFamily {
    IsolatedVertex,
    IsolatedTriangle,
    /// Clique size `h`, or `floor(v^t)` when `t` is given instead.
    IsolatedClique {
        k: usize,
        i: usize,
        h: Option<usize>,
        t: Option<f64>,
    },
}

impl ScanFamily {
    pub fn spec_at(&self, v: usize) -> Result<PropertySpec> {
        match *self {
            ScanFamily::IsolatedVertex => PropertySpec::isolated_vertex(v),
            ScanFamily::IsolatedTriangle => PropertySpec::isolated_triangle(v),
            ScanFamily::IsolatedClique { k, i, h, t } => {
                let h = match (h, t) {
                    (Some(h), _) => h,
                    (None, Some(t)) => clique_size_for(v, k, t),
                    (None, None) => k + 1,
                };
                Ok(PropertySpec::IsolatedClique(CliqueSpec::new(v, k, i, h)?))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub family: ScanFamily,
    pub vs: Vec<usize>,
    pub columns: Vec<Column>,
    pub budget: Duration,
    /// Record wall times in `ms_s` / `ms_bs`; off by default so output is
    /// reproducible byte for byte.
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub rows: Vec<ScalingRow>,
    pub fits: BTreeMap<String, FitResult<f64>>,
    /// Skipped cells and fits, one message each.
    pub warnings: Vec<String>,
}

/// Witness-certified `s` lower bound: sensitivity at the natural 1-input.
pub fn s_lower_bound(spec: &PropertySpec) -> Result<u64> {
    let x = match *spec {
        PropertySpec::IsolatedVertex { v } => build_isolated_vertex_witness(v)?.into_bits(),
        _ => {
            let c = spec.as_clique().ok_or_else(|| {
                Error::InvalidSpec("no sensitivity witness for this property".into())
            })?;
            build_s1_witness(c.v, c.k, c.h)?.into_bits()
        }
    };
    Ok(sensitivity_at(spec, &x)?.s_at_x as u64)
}

/// Certified `bs` lower bound: a clique packing at the empty hypergraph, or
/// the sensitive bits of the witness as singleton blocks when no packing
/// applies. Every block is re-verified.
pub fn bs_lower_bound(spec: &PropertySpec) -> Result<u64> {
    let (x, blocks) = match *spec {
        PropertySpec::IsolatedTriangle { v } => (
            BitString::zeros(spec.input_len()),
            triangle_packing(v)?.edge_blocks(),
        ),
        PropertySpec::IsolatedClique(c) if c.h == c.k + 1 => (
            BitString::zeros(spec.input_len()),
            clique_packing(c.v, c.k)?.edge_blocks(),
        ),
        PropertySpec::IsolatedVertex { v } => {
            let x = build_isolated_vertex_witness(v)?.into_bits();
            let bits = sensitivity_at(spec, &x)?.sensitive_bits;
            (x, bits.into_iter().map(|b| vec![b]).collect())
        }
        _ => {
            return Err(Error::ConstructionUnavailable(
                "no block packing for this property".into(),
            ))
        }
    };
    Ok(certify_blocks(spec, &x, &blocks)?.count as u64)
}

fn measure(column: Column, spec: &PropertySpec, budget: Duration) -> Result<u64> {
    let n = spec.input_len();
    let deadline = Some(Instant::now() + budget);
    match column {
        Column::SLower => s_lower_bound(spec),
        Column::BsLower => bs_lower_bound(spec),
        Column::SExact => Ok(sensitivity_global_until(spec, MAX_TABLE_VARS, deadline)?.s as u64),
        Column::BsExact => {
            if n > MAX_TABLE_VARS {
                return Err(Error::TooLarge {
                    n,
                    budget: MAX_TABLE_VARS,
                });
            }
            Ok(block_sensitivity_global(spec, MAX_TABLE_VARS, deadline)?.0 as u64)
        }
    }
}

/// Runs the sweep in increasing `v`. A cell whose measurement fails or runs
/// past the budget is left empty with a warning.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutput> {
    if cfg.vs.is_empty() {
        return Err(Error::InvalidSpec("empty v range".into()));
    }
    let mut vs = cfg.vs.clone();
    vs.sort_unstable();
    vs.dedup();
    let mut rows = Vec::with_capacity(vs.len());
    let mut warnings = Vec::new();
    for &v in &vs {
        let spec = cfg.family.spec_at(v)?;
        let (gv, gk) = spec.graph_shape().unwrap();
        let mut row = ScalingRow {
            v,
            n: binomial(gv as u64, gk as u64),
            s_lower: None,
            s_exact: None,
            bs_lower: None,
            bs_exact: None,
            ms_s: None,
            ms_bs: None,
        };
        let (mut ms_s, mut ms_bs) = (0u64, 0u64);
        for &column in &cfg.columns {
            let start = Instant::now();
            let result = measure(column, &spec, cfg.budget);
            let elapsed = start.elapsed();
            let ms = elapsed.as_millis() as u64;
            match column {
                Column::SLower | Column::SExact => ms_s += ms,
                _ => ms_bs += ms,
            }
            match result {
                Ok(_) if elapsed > cfg.budget => warnings.push(format!(
                    "{} at v = {v}: time budget of {} ms exceeded",
                    column.name(),
                    cfg.budget.as_millis()
                )),
                Ok(value) => column.set(&mut row, value),
                Err(Error::BudgetExceeded) => warnings.push(format!(
                    "{} at v = {v}: time budget of {} ms exceeded",
                    column.name(),
                    cfg.budget.as_millis()
                )),
                Err(e) => warnings.push(format!("{} at v = {v}: {e}", column.name())),
            }
        }
        if cfg.timings {
            row.ms_s = Some(ms_s);
            row.ms_bs = Some(ms_bs);
        }
        rows.push(row);
    }
    let mut fits = BTreeMap::new();
    for &column in &cfg.columns {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter_map(|r| {
                column
                    .get(r)
                    .filter(|&y| y > 0)
                    .map(|y| (r.v as f64, y as f64))
            })
            .collect();
        match fit_exponent(&points) {
            Ok(fit) => {
                fits.insert(column.name().to_string(), fit);
            }
            Err(e) => warnings.push(format!("no fit for {}: {e}", column.name())),
        }
    }
    Ok(ScanOutput {
        rows,
        fits,
        warnings,
    })
}

pub fn rows_to_csv(rows: &[ScalingRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ScalingRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

/// Quick end-to-end checks on small known cases; `(name, passed, detail)`.
pub fn selftest() -> Vec<(String, bool, String)> {
    let mut out = Vec::new();
    let mut check = |name: &str, got: Result<u64>, want: u64| {
        let (ok, detail) = match got {
            Ok(g) => (g == want, format!("got {g}, want {want}")),
            Err(e) => (false, e.to_string()),
        };
        out.push((name.to_string(), ok, detail));
    };
    let rub = PropertySpec::rubinstein(4).unwrap();
    check(
        "rubinstein k=4 sensitivity",
        sensitivity_global_until(&rub, MAX_TABLE_VARS, None).map(|g| g.s as u64),
        8,
    );
    check(
        "rubinstein k=4 bs at zeros",
        crate::sensitivity::block_sensitivity_exact(&rub, &BitString::zeros(16), 2)
            .map(|b| b.value as u64),
        8,
    );
    let iv = PropertySpec::isolated_vertex(4).unwrap();
    check("isolated vertex v=4 witness", s_lower_bound(&iv), 3);
    check(
        "isolated triangle v=5 s1 witness",
        s_lower_bound(&PropertySpec::isolated_triangle(5).unwrap()),
        9,
    );
    check(
        "triangle packing v=9",
        bs_lower_bound(&PropertySpec::isolated_triangle(9).unwrap()),
        12,
    );
    let fam =
        crate::field::make_field(3, 1).and_then(|f| crate::family::generate_family(&f, 2, 1, None));
    check(
        "family q=3 d=2 ell=1",
        fam.map(|f| {
            if crate::family::verify_family(&f).ok {
                f.sets.len() as u64
            } else {
                0
            }
        }),
        9,
    );
    out
}
