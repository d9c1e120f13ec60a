use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qes_core::bethe::{SeedMode, Tolerances};
use qes_core::models::{ModelDocument, ModelFamily, ParamValue, Sector};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Bethe ansatz solver and verifier for quasi-exactly solvable difference equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Bethe equations for every state of the invariant subspace.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Where the Newton seeds come from.
        #[arg(long, value_enum, default_value_t = SeedArg::Oracle)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve, then check the zero mode and the pointwise Schrödinger equation.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Number of sample points on the family's default window.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare a limit or restriction with its closed-form spectrum.
    Limits {
        /// ch-from-mp, mp-from-mp, ch-from-sextic, mp-from-sextic, wilson, cdh, aw, q-universal
        #[arg(long)]
        case: String,
        #[command(flatten)]
        model: ModelArgs,
        /// Value given to the divergent parameters of asymptotic cases.
        #[arg(long, default_value_t = 1e4)]
        large: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample φ₀², Ψ and the Schrödinger residual of one solution.
    Grid {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Index of the solution in eigenvalue order.
        #[arg(long, default_value_t = 0)]
        solution: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the operator matrix on the invariant subspace.
    DumpMatrix {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    Oracle,
    Homotopy,
}

impl From<SeedArg> for SeedMode {
    fn from(s: SeedArg) -> Self {
        match s {
            SeedArg::Oracle => SeedMode::Oracle,
            SeedArg::Homotopy => SeedMode::Homotopy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Largest accepted normalised BAE residual.
    #[arg(long)]
    pub tol_residual: Option<f64>,
    /// Relative eigenvalue agreement between formula and oracle.
    #[arg(long)]
    pub tol_eigenvalue: Option<f64>,
    /// Residual at which Newton polishing stops.
    #[arg(long)]
    pub tol_polish: Option<f64>,
    /// Distance in η below which roots count as coincident.
    #[arg(long)]
    pub tol_collision: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, CliError> {
        let mut t = Tolerances::default();
        for (slot, v, name) in [
            (&mut t.residual, self.tol_residual, "tol-residual"),
            (&mut t.eigenvalue, self.tol_eigenvalue, "tol-eigenvalue"),
            (&mut t.polish_target, self.tol_polish, "tol-polish"),
            (&mut t.root_collision, self.tol_collision, "tol-collision"),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Usage(format!("--{name} must be a positive number")));
                }
                *slot = v;
            }
        }
        Ok(t)
    }
}

/// Model given inline or as a JSON document.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// JSON model document; excludes the inline model flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<ModelFamily>,
    /// Complex values are written `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Degree of the invariant subspace.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// full, even or odd; the sextic families default to the parity of M.
    #[arg(long)]
    pub sector: Option<String>,
}

fn parse_value(name: &str, text: &str) -> Result<ParamValue, CliError> {
    let bad = || CliError::Usage(format!("--{name}: cannot parse `{text}` as a number or `re,im` pair"));
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    match parts.as_slice() {
        [re] => Ok(ParamValue::Real(num(re)?)),
        [re, im] => Ok(ParamValue::Complex([num(re)?, num(im)?])),
        _ => Err(bad()),
    }
}

impl ModelArgs {
    fn inline_values(&self) -> [(&'static str, Option<&String>); 10] {
        [
            ("a1", self.a1.as_ref()),
            ("a2", self.a2.as_ref()),
            ("beta", self.beta.as_ref()),
            ("a", self.a.as_ref()),
            ("b", self.b.as_ref()),
            ("c", self.c.as_ref()),
            ("d", self.d.as_ref()),
            ("e", self.e.as_ref()),
            ("f", self.f.as_ref()),
            ("q", self.q.as_ref()),
        ]
    }

    fn has_inline(&self) -> bool {
        self.family.is_some()
            || self.m.is_some()
            || self.sector.is_some()
            || self.inline_values().iter().any(|(_, v)| v.is_some())
    }

    /// Builds the model document. `family_hint` fills in a missing
    /// `--family`; `defaults` supplies parameters left off the command line.
    pub fn document(
        &self,
        family_hint: Option<ModelFamily>,
        defaults: &[(&str, f64)],
    ) -> Result<ModelDocument, CliError> {
        if let Some(path) = &self.spec {
            if self.has_inline() {
                return Err(CliError::Usage("--spec cannot be combined with inline model flags".into()));
            }
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
            let doc = ModelDocument::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            doc.sector.check(doc.family, doc.m).map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok(doc);
        }
        let family = match (self.family, family_hint) {
            (Some(f), Some(h)) if f != h => {
                return Err(CliError::Usage(format!("this command needs --family {h}, got {f}")));
            }
            (Some(f), _) | (None, Some(f)) => f,
            (None, None) => return Err(CliError::Usage("--family or --spec is required".into())),
        };
        let m = self.m.ok_or_else(|| CliError::Usage("--M is required".into()))?;
        let sector = match &self.sector {
            Some(s) => s.parse::<Sector>().map_err(|e| CliError::Usage(e.to_string()))?,
            None if family.is_sextic() => {
                if m % 2 == 0 {
                    Sector::Even
                } else {
                    Sector::Odd
                }
            }
            None => Sector::Full,
        };
        sector.check(family, m).map_err(|e| CliError::Usage(e.to_string()))?;

        let names = family.param_names();
        let mut params = BTreeMap::new();
        for (name, value) in self.inline_values() {
            match value {
                Some(text) if names.contains(&name) => {
                    params.insert(name.to_string(), parse_value(name, text)?);
                }
                Some(_) => return Err(CliError::Usage(format!("--{name} is not a parameter of {family}"))),
                None => {}
            }
        }
        for &(name, v) in defaults {
            params.entry(name.to_string()).or_insert(ParamValue::Real(v));
        }
        if let Some(missing) = names.iter().find(|n| !params.contains_key(**n)) {
            return Err(CliError::Usage(format!("--{missing} is required for {family}")));
        }
        Ok(ModelDocument { family, params, m, sector })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(parse_value("a", "1.5").unwrap(), ParamValue::Real(1.5));
        assert_eq!(parse_value("a1", "1,-0.5").unwrap(), ParamValue::Complex([1.0, -0.5]));
        assert_eq!(parse_value("a1", "[1, 2]").unwrap(), ParamValue::Complex([1.0, 2.0]));
        assert!(parse_value("a", "x").is_err());
        assert!(parse_value("a", "1,2,3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
