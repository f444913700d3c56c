//! Run configuration: command-line flags layered over an optional
//! `key=value` defaults file.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use circres::walk::DEFAULT_SEED;

pub const DEFAULT_JUMPS: [usize; 2] = [1, 2];

#[derive(Debug, Parser)]
#[command(
    name = "circres",
    version,
    about = "Effective resistance and random walks on circulant graphs"
)]
pub struct Cli {
    /// key=value file supplying defaults for any flag
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-point resistance R(l), or the full profile when --l is omitted
    Resist(QueryArgs),
    /// First-passage, commute and mean first-passage times
    Walk(WalkArgs),
    /// Kirchhoff index (total effective resistance)
    Kirchhoff(QueryArgs),
    /// Run identity, oracle and equivalence checks over a range of N
    Verify(VerifyArgs),
    /// Per-(N, l) table of exact and floating values
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated jump offsets [default: 1,2]
    #[arg(long, value_name = "LIST")]
    pub jumps: Option<String>,
    /// Target vertex offset
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Relative tolerance for the exact~float cross-check
    #[arg(long, value_name = "TOL")]
    pub cross_tol: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Report the mean first-passage time
    #[arg(long)]
    pub mfpt: bool,
    /// Monte Carlo trials (0 disables simulation)
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Inclusive range "a..b", or a single N
    #[arg(long = "n-range", value_name = "A..B")]
    pub n_range: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub jumps: Option<String>,
    /// Check groups to run (comma-separated) [default: all]
    #[arg(long, value_name = "GROUPS")]
    pub check: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long = "n-range", value_name = "A..B")]
    pub n_range: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub jumps: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_name = "TOL")]
    pub cross_tol: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckGroup {
    Identities,
    Trig,
    Schwatt,
    Foster,
    Equivalence,
    Hitting,
    Recursion,
    Kirchhoff,
    C2,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 9] = [
        CheckGroup::Identities,
        CheckGroup::Trig,
        CheckGroup::Schwatt,
        CheckGroup::Foster,
        CheckGroup::Equivalence,
        CheckGroup::Hitting,
        CheckGroup::Recursion,
        CheckGroup::Kirchhoff,
        CheckGroup::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::Identities => "identities",
            CheckGroup::Trig => "trig",
            CheckGroup::Schwatt => "schwatt",
            CheckGroup::Foster => "foster",
            CheckGroup::Equivalence => "equivalence",
            CheckGroup::Hitting => "hitting",
            CheckGroup::Recursion => "recursion",
            CheckGroup::Kirchhoff => "kirchhoff",
            CheckGroup::C2 => "c2",
        }
    }
}

impl FromStr for CheckGroup {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| UsageError(format!("unknown check group {s:?}")))
    }
}

/// Invalid input; maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub n_range: Option<(usize, usize)>,
    pub jumps: Vec<usize>,
    pub l: Option<usize>,
    pub mode: Option<Mode>,
    pub cross_tol: Option<f64>,
    pub mfpt: bool,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<CheckGroup>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

/// Parsed `key=value` defaults. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: [&str; 12] = [
    "n",
    "n-range",
    "jumps",
    "l",
    "mode",
    "cross-tol",
    "mfpt",
    "trials",
    "seed",
    "check",
    "format",
    "output",
];

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected key=value", i + 1)))?;
            let key = k.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(UsageError(format!(
                    "config line {}: unknown key {key:?}",
                    i + 1
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Self { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

fn parse_num<T: FromStr>(key: &str, s: &str) -> Result<T, UsageError> {
    s.trim()
        .parse()
        .map_err(|_| UsageError(format!("invalid value for {key}: {s:?}")))
}

pub fn parse_jumps(s: &str) -> Result<Vec<usize>, UsageError> {
    s.split(',')
        .map(|t| parse_num("jumps", t))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(UsageError("empty jump list".into()))
            } else {
                Ok(v)
            }
        })
}

/// `"a..b"` (inclusive), `"a..=b"`, or `"a"`.
pub fn parse_range(s: &str) -> Result<(usize, usize), UsageError> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            parse_num("n-range", a)?,
            parse_num("n-range", b.strip_prefix('=').unwrap_or(b))?,
        ),
        None => {
            let v = parse_num("n-range", s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(UsageError(format!("empty n-range {s:?}")));
    }
    Ok((lo, hi))
}

fn parse_checks(s: &str) -> Result<Vec<CheckGroup>, UsageError> {
    let mut groups = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if t == "all" {
            groups.extend(CheckGroup::ALL);
        } else {
            groups.push(t.parse()?);
        }
    }
    groups.sort();
    groups.dedup();
    Ok(groups)
}

fn parse_mode(s: &str) -> Result<Mode, UsageError> {
    Mode::from_str(s, true).map_err(|_| UsageError(format!("invalid mode {s:?}")))
}

fn parse_format(s: &str) -> Result<Format, UsageError> {
    Format::from_str(s, true).map_err(|_| UsageError(format!("invalid format {s:?}")))
}

fn parse_tol(s: &str) -> Result<f64, UsageError> {
    let v: f64 = parse_num("cross-tol", s)?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(UsageError(format!(
            "cross-tol must be a finite non-negative number, got {s:?}"
        )))
    }
}

fn parse_bool(s: &str) -> Result<bool, UsageError> {
    match s {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(UsageError(format!("invalid boolean {s:?}"))),
    }
}

/// Picks the flag if given, else the config value parsed with `parse`.
fn layer<T>(
    flag: Option<T>,
    file: &ConfigFile,
    key: &str,
    parse: impl Fn(&str) -> Result<T, UsageError>,
) -> Result<Option<T>, UsageError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key).map(parse).transpose(),
    }
}

struct Common<'a> {
    n: Option<usize>,
    n_range: Option<&'a str>,
    jumps: Option<&'a str>,
    l: Option<usize>,
    mode: Option<Mode>,
    cross_tol: Option<f64>,
    out: &'a OutputArgs,
}

impl RunConfig {
    pub fn resolve(command: &Command, file: &ConfigFile) -> Result<Self, UsageError> {
        let (common, mfpt, trials, seed, checks) = match command {
            Command::Resist(q) | Command::Kirchhoff(q) => (Self::query(q), false, None, None, None),
            Command::Walk(w) => (Self::query(&w.query), w.mfpt, w.trials, w.seed, None),
            Command::Verify(v) => (
                Common {
                    n: None,
                    n_range: v.n_range.as_deref(),
                    jumps: v.jumps.as_deref(),
                    l: None,
                    mode: None,
                    cross_tol: None,
                    out: &v.out,
                },
                false,
                None,
                None,
                v.check.as_deref(),
            ),
            Command::Sweep(s) => (
                Common {
                    n: None,
                    n_range: s.n_range.as_deref(),
                    jumps: s.jumps.as_deref(),
                    l: None,
                    mode: s.mode,
                    cross_tol: s.cross_tol,
                    out: &s.out,
                },
                false,
                None,
                None,
                None,
            ),
        };

        let n = layer(common.n, file, "n", |s| parse_num("n", s))?;
        let n_range = match common.n_range {
            Some(r) => Some(parse_range(r)?),
            None => file.get("n-range").map(parse_range).transpose()?,
        };
        let jumps = match common.jumps {
            Some(j) => parse_jumps(j)?,
            None => file
                .get("jumps")
                .map(parse_jumps)
                .transpose()?
                .unwrap_or(DEFAULT_JUMPS.to_vec()),
        };
        let checks = match checks {
            Some(c) => parse_checks(c)?,
            None => file
                .get("check")
                .map(parse_checks)
                .transpose()?
                .unwrap_or(CheckGroup::ALL.to_vec()),
        };
        let mfpt = mfpt
            || file
                .get("mfpt")
                .map(parse_bool)
                .transpose()?
                .unwrap_or(false);
        Ok(RunConfig {
            n,
            n_range,
            jumps,
            l: layer(common.l, file, "l", |s| parse_num("l", s))?,
            mode: layer(common.mode, file, "mode", parse_mode)?,
            cross_tol: layer(common.cross_tol, file, "cross-tol", parse_tol)?,
            mfpt,
            trials: layer(trials, file, "trials", |s| parse_num("trials", s))?.unwrap_or(0),
            seed: layer(seed, file, "seed", |s| parse_num("seed", s))?.unwrap_or(DEFAULT_SEED),
            checks,
            format: layer(common.out.format, file, "format", parse_format)?.unwrap_or_default(),
            output: layer(common.out.output.clone(), file, "output", |s| {
                Ok(PathBuf::from(s))
            })?,
        })
    }

    fn query(q: &QueryArgs) -> Common<'_> {
        Common {
            n: q.n,
            n_range: None,
            jumps: q.jumps.as_deref(),
            l: q.l,
            mode: q.mode,
            cross_tol: q.cross_tol,
            out: &q.out,
        }
    }

    pub fn require_n(&self) -> Result<usize, UsageError> {
        self.n.ok_or_else(|| UsageError("--n is required".into()))
    }

    /// The n-range, falling back to a single `--n`.
    pub fn require_range(&self) -> Result<(usize, usize), UsageError> {
        self.n_range
            .or(self.n.map(|n| (n, n)))
            .ok_or_else(|| UsageError("--n-range is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str], file: &str) -> Result<RunConfig, UsageError> {
        let cli = Cli::try_parse_from(args).unwrap();
        RunConfig::resolve(&cli.command, &ConfigFile::parse(file)?)
    }

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("5..40").unwrap(), (5, 40));
        assert_eq!(parse_range("5..=40").unwrap(), (5, 40));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
        assert_eq!(parse_jumps("1,2").unwrap(), vec![1, 2]);
        assert!(parse_jumps("1,,2").is_err());
        assert_eq!(
            parse_checks("foster,trig,foster").unwrap(),
            vec![CheckGroup::Trig, CheckGroup::Foster]
        );
        assert!(parse_checks("bogus").is_err());
    }

    #[test]
    fn defaults() {
        let c = resolve(&["circres", "walk", "--n", "6"], "").unwrap();
        assert_eq!(c.jumps, vec![1, 2]);
        assert_eq!(c.seed, DEFAULT_SEED);
        assert_eq!(c.trials, 0);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.mode, None);
    }

    #[test]
    fn flags_override_file() {
        let file = "# defaults\nn = 9\njumps=1,3\nseed=5\nformat=json\n";
        let c = resolve(&["circres", "walk", "--n", "6", "--seed", "42"], file).unwrap();
        assert_eq!(c.n, Some(6));
        assert_eq!(c.seed, 42);
        assert_eq!(c.jumps, vec![1, 3]);
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn bad_file() {
        assert!(ConfigFile::parse("colour=blue").is_err());
        assert!(ConfigFile::parse("n 5").is_err());
        assert!(resolve(&["circres", "resist"], "mode=fuzzy").is_err());
    }
}
