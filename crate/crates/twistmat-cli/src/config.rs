//! Flag and config-file resolution. A JSON config file may hold any of the
//! long flags by name; explicitly passed flags win.

use crate::{CliError, CliResult};
use clap::{Args, ValueEnum};
use serde_json::Value;
use std::path::PathBuf;
use std::sync::Arc;
use twistmat::groups::IndexSet;
use twistmat::rings::parse::ring_spec_from_json;
use twistmat::rings::{FqPoly, FqSpec, RingSpec};
use twistmat::sampling::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Opts {
    /// JSON config file; explicitly passed flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Ring spec as JSON or a shorthand name (`Z`, `Z[1/6]`, `Z[sqrt2]`, `F2[t]`,
    /// `F3[t]`, `F2[t,t^-1]`, `Rf`); repeatable where a ring list makes sense
    #[arg(long)]
    pub ring: Vec<String>,
    /// Matrix size n
    #[arg(long)]
    pub n: Option<usize>,
    /// Index set I as a comma list, e.g. "2,3"; empty string for the empty set
    #[arg(long = "set-i")]
    pub set_i: Option<String>,
    /// Quotient: none | mod_commutator_u | mod_center_u4 | JSON
    #[arg(long)]
    pub quotient: Option<String>,
    /// Automorphism: a name (identity, flip, abels3_phi, psi_d2_1,
    /// psi_d2_-1) or a JSON atom array
    #[arg(long)]
    pub aut: Option<String>,
    /// RNG seed recorded in every report
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sample count for randomized checks
    #[arg(long)]
    pub samples: Option<usize>,
    /// Search bound (automorphism box / coordinate box)
    #[arg(long)]
    pub bound: Option<i64>,
    /// Parameter count for certificates
    #[arg(long)]
    pub count: Option<usize>,
    /// Flip exponent for fix-family (0 or 1)
    #[arg(long)]
    pub epsilon: Option<u8>,
    /// Ring automorphism for fix-family: identity | quad_conj |
    /// `{"frobenius":k}` | `{"monomial":[a,b,c,d]}`
    #[arg(long)]
    pub alpha: Option<String>,
    /// Diagonal d^c for fix-family, comma list of unit expressions
    #[arg(long)]
    pub dc: Option<String>,
    /// Denominator exponent bound for box searches over localized rings
    #[arg(long = "exp-bound")]
    pub exp_bound: Option<i64>,
    /// Group-order limit for automorphism enumeration
    #[arg(long = "aut-limit")]
    pub aut_limit: Option<usize>,
    /// Directory reports are written into
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Options after merging the config file underneath the flags.
pub struct Resolved {
    pub opts: Opts,
    file: Option<Value>,
}

impl Opts {
    pub fn resolve(self) -> CliResult<Resolved> {
        let file = match &self.config {
            None => None,
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
                Some(value)
            }
        };
        Ok(Resolved { opts: self, file })
    }
}

impl Resolved {
    fn file_str(&self, key: &str) -> Option<String> {
        self.file.as_ref()?.get(key).map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }

    fn file_u64(&self, key: &str) -> Option<u64> {
        self.file.as_ref()?.get(key).and_then(|v| v.as_u64())
    }

    pub fn rings(&self) -> Vec<String> {
        if !self.opts.ring.is_empty() {
            return self.opts.ring.clone();
        }
        if let Some(file) = &self.file {
            match file.get("ring") {
                Some(Value::Array(items)) => {
                    return items
                        .iter()
                        .map(|v| match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect()
                }
                Some(Value::String(s)) => return vec![s.clone()],
                Some(other) => return vec![other.to_string()],
                None => {}
            }
        }
        vec![]
    }

    pub fn n(&self, default: usize) -> usize {
        self.opts.n.or_else(|| self.file_u64("n").map(|v| v as usize)).unwrap_or(default)
    }

    pub fn set_i(&self, n: usize, default: &[usize]) -> CliResult<IndexSet> {
        let text = self.opts.set_i.clone().or_else(|| self.file_str("set_i"));
        let members: Vec<usize> = match text {
            None => default.to_vec(),
            Some(s) => {
                let s = s.trim();
                if s.is_empty() || s == "none" {
                    vec![]
                } else {
                    s.split(',')
                        .map(|p| {
                            p.trim()
                                .parse::<usize>()
                                .map_err(|_| CliError::Usage(format!("bad index {p} in set-i")))
                        })
                        .collect::<CliResult<Vec<usize>>>()?
                }
            }
        };
        IndexSet::new(n, &members).map_err(CliError::usage)
    }

    pub fn quotient(&self, default: &str) -> String {
        self.opts.quotient.clone().or_else(|| self.file_str("quotient")).unwrap_or_else(|| default.into())
    }

    pub fn aut(&self, default: &str) -> String {
        self.opts.aut.clone().or_else(|| self.file_str("aut")).unwrap_or_else(|| default.into())
    }

    pub fn alpha(&self, default: &str) -> String {
        self.opts.alpha.clone().or_else(|| self.file_str("alpha")).unwrap_or_else(|| default.into())
    }

    pub fn dc(&self) -> Option<String> {
        self.opts.dc.clone().or_else(|| self.file_str("dc"))
    }

    pub fn seed(&self) -> u64 {
        self.opts.seed.or_else(|| self.file_u64("seed")).unwrap_or(DEFAULT_SEED)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.opts.samples.or_else(|| self.file_u64("samples").map(|v| v as usize)).unwrap_or(default)
    }

    pub fn bound(&self, default: i64) -> i64 {
        self.opts
            .bound
            .or_else(|| self.file.as_ref().and_then(|f| f.get("bound")).and_then(|v| v.as_i64()))
            .unwrap_or(default)
    }

    pub fn count(&self, default: usize) -> usize {
        self.opts.count.or_else(|| self.file_u64("count").map(|v| v as usize)).unwrap_or(default)
    }

    pub fn epsilon(&self) -> u8 {
        self.opts.epsilon.or_else(|| self.file_u64("epsilon").map(|v| v as u8)).unwrap_or(0)
    }

    pub fn exp_bound(&self, default: i64) -> i64 {
        self.opts
            .exp_bound
            .or_else(|| self.file.as_ref().and_then(|f| f.get("exp_bound")).and_then(|v| v.as_i64()))
            .unwrap_or(default)
    }

    pub fn aut_limit(&self, default: usize) -> usize {
        self.opts
            .aut_limit
            .or_else(|| self.file_u64("aut_limit").map(|v| v as usize))
            .unwrap_or(default)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.opts
            .out_dir
            .clone()
            .or_else(|| self.file_str("out_dir").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("reports"))
    }

    pub fn format(&self) -> Format {
        if let Some(f) = self.opts.format {
            return f;
        }
        match self.file_str("format").as_deref() {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => Format::Both,
        }
    }
}

/// The enumeration cap, overridable through TWISTMAT_LIMIT.
pub fn enumeration_limit() -> u128 {
    std::env::var("TWISTMAT_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

/// Named ring shorthands next to full JSON specs.
pub fn resolve_ring(text: &str) -> CliResult<Arc<RingSpec>> {
    let t = text.trim();
    if t.starts_with('{') {
        return ring_spec_from_json(t).map_err(CliError::usage);
    }
    let f2 = FqSpec::prime_field(2);
    let f3 = FqSpec::prime_field(3);
    let spec = match t {
        "Z" | "integers" => RingSpec::integers(),
        "Z[1/6]" => RingSpec::s_integers(&[2, 3]),
        "Z[sqrt2]" | "Z[sqrt(2)]" => RingSpec::quadratic(2),
        "F2[t]" => RingSpec::poly_ring(f2),
        "F3[t]" => RingSpec::poly_ring(f3),
        "F2[t,t^-1]" => RingSpec::laurent(f2),
        "Rf" | "R_f" => {
            let f = FqPoly::from_scalars(&f2, &[1, 1, 0, 1]);
            RingSpec::localized_poly(f2, true, vec![f])
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown ring {other:?}; pass a JSON ring spec or one of Z, Z[1/6], Z[sqrt2], F2[t], F3[t], F2[t,t^-1], Rf"
            )))
        }
    };
    Ok(spec)
}

pub fn resolve_format(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Both => "both",
    }
}
