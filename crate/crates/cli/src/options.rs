//! `key=value` arguments. Every key must be consumed; leftovers are errors.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct Options {
    values: BTreeMap<String, String>,
}

impl Options {
    pub fn parse<S: AsRef<str>>(args: &[S]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for arg in args {
            let arg = arg.as_ref();
            let (key, value) = arg
                .split_once('=')
                .filter(|(k, _)| !k.is_empty())
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{arg}`")))?;
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Usage(format!("`{key}` given twice")));
            }
        }
        Ok(Options { values })
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        Options {
            values: pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    pub fn optional<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.remove(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("cannot read `{key}={raw}`"))),
        }
    }

    pub fn required<T: FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        self.optional(key)?
            .ok_or_else(|| CliError::Usage(format!("missing `{key}=`")))
    }

    /// Fails on any key nobody asked for.
    pub fn finish(self) -> Result<(), CliError> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(_) => {
                let keys: Vec<&str> = self.values.keys().map(String::as_str).collect();
                Err(CliError::Usage(format!("unknown flag(s): {}", keys.join(", "))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leftovers_are_errors() {
        let mut o = Options::parse(&["q=8", "colour=red"]).unwrap();
        assert_eq!(o.required::<u32>("q").unwrap(), 8);
        assert!(matches!(o.finish(), Err(CliError::Usage(m)) if m.contains("colour")));
    }

    #[test]
    fn rejects_bare_words_and_repeats() {
        assert!(Options::parse(&["q"]).is_err());
        assert!(Options::parse(&["=3"]).is_err());
        assert!(Options::parse(&["q=2", "q=3"]).is_err());
        let mut o = Options::parse(&["q=x"]).unwrap();
        assert!(o.required::<u32>("q").is_err());
    }
}
