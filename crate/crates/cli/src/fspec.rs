//! Function specs: `basic:d`, `gt:{b1,...}`, `file:path`, `dictator`,
//! `majority`, `threshold:k`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use slice_harmonic::coupling::BooleanFunction;
use slice_harmonic::gt::{gt_basis_element, AdmissibleSet};
use slice_harmonic::MultilinearPoly;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSpec {
    Basic(usize),
    Gt(Vec<usize>),
    File(PathBuf),
    Dictator,
    Majority,
    Threshold(usize),
}

impl FromStr for FSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let bad = |why: &str| CliError::invalid(format!("bad f-spec {text:?}: {why}"));
        let (head, arg) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        let number = |a: Option<&str>| -> CliResult<usize> {
            a.ok_or_else(|| bad("missing argument"))?
                .trim()
                .parse()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        match head {
            "basic" => Ok(FSpec::Basic(number(arg)?)),
            "threshold" => Ok(FSpec::Threshold(number(arg)?)),
            "gt" => {
                let inner = arg.ok_or_else(|| bad("missing set"))?.trim();
                let inner = inner.strip_prefix('{').unwrap_or(inner);
                let inner = inner.strip_suffix('}').unwrap_or(inner);
                let set = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| bad("expected integers")))
                    .collect::<CliResult<Vec<usize>>>()?;
                Ok(FSpec::Gt(set))
            }
            "file" => match arg {
                Some(path) if !path.is_empty() => Ok(FSpec::File(PathBuf::from(path))),
                _ => Err(bad("missing path")),
            },
            "dictator" if arg.is_none() => Ok(FSpec::Dictator),
            "majority" if arg.is_none() => Ok(FSpec::Majority),
            _ => Err(bad("unknown family")),
        }
    }
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::Basic(d) => write!(f, "basic:{d}"),
            FSpec::Gt(set) => {
                let items: Vec<String> = set.iter().map(usize::to_string).collect();
                write!(f, "gt:{{{}}}", items.join(","))
            }
            FSpec::File(path) => write!(f, "file:{}", path.display()),
            FSpec::Dictator => write!(f, "dictator"),
            FSpec::Majority => write!(f, "majority"),
            FSpec::Threshold(k) => write!(f, "threshold:{k}"),
        }
    }
}

impl FSpec {
    /// The polynomial on `n` variables. Boolean families give their `{0,1}`
    /// multilinear representation.
    pub fn poly(&self, n: usize) -> CliResult<MultilinearPoly> {
        match self {
            FSpec::Basic(d) => {
                if 2 * d > n {
                    return Err(CliError::invalid(format!("basic:{d} needs n ≥ {}", 2 * d)));
                }
                Ok(MultilinearPoly::basic(n, *d)?)
            }
            FSpec::Gt(set) => Ok(gt_basis_element(&AdmissibleSet::new(set.clone())?, n)?),
            FSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                let f = MultilinearPoly::from_json(&text)?;
                if f.n() != n {
                    return Err(CliError::invalid(format!(
                        "{} has n = {}, expected {n}",
                        path.display(),
                        f.n()
                    )));
                }
                Ok(f)
            }
            _ => Ok(self.boolean(n)?.to_poly()),
        }
    }

    pub fn boolean(&self, n: usize) -> CliResult<BooleanFunction> {
        match self {
            FSpec::Dictator => Ok(BooleanFunction::dictator(n, 1)?),
            FSpec::Majority => Ok(BooleanFunction::majority(n)?),
            FSpec::Threshold(k) => Ok(BooleanFunction::threshold(n, *k)?),
            _ => Ok(BooleanFunction::from_poly(&self.poly(n)?)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        for text in [
            "basic:2",
            "gt:{2,4}",
            "gt:{}",
            "file:/tmp/f.json",
            "dictator",
            "majority",
            "threshold:3",
        ] {
            assert_eq!(text.parse::<FSpec>().unwrap().to_string(), text);
        }
        assert_eq!("gt:2,4".parse::<FSpec>().unwrap(), FSpec::Gt(vec![2, 4]));
        for bad in ["basic", "basic:x", "gt:{a}", "file:", "dictator:1", "sine"] {
            assert!(bad.parse::<FSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds_functions() {
        assert_eq!(
            FSpec::Basic(1).poly(4).unwrap(),
            MultilinearPoly::basic(4, 1).unwrap()
        );
        assert!(FSpec::Basic(3).poly(5).is_err());
        assert!(FSpec::Gt(vec![1]).poly(4).is_err());
        assert!(FSpec::Gt(vec![2, 4]).poly(4).unwrap().is_harmonic());
        assert!(FSpec::Majority.boolean(4).is_err());
        assert_eq!(
            FSpec::Dictator.poly(3).unwrap(),
            MultilinearPoly::var(3, 1).unwrap()
        );
        let from_basic = FSpec::Basic(0).boolean(3).unwrap();
        assert!(from_basic.table().iter().all(|&v| v));
    }
}
