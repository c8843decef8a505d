//! Finitely presented groups: generator names plus freely reduced
//! relator words, with the "< a, b | baabaBaaaaBa, ... >" text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gen_names: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation; relators are freely reduced and empty ones
    /// dropped.
    pub fn new(gen_names: Vec<String>, relators: Vec<Word>) -> Self {
        let n = gen_names.len();
        let relators: Vec<Word> = relators
            .into_iter()
            .map(|r| r.free_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        for r in &relators {
            for &(g, _) in &r.letters {
                assert!(g < n, "relator letter out of range");
            }
        }
        Presentation {
            gen_names,
            relators,
        }
    }

    pub fn free(gen_names: Vec<String>) -> Self {
        Presentation {
            gen_names,
            relators: vec![],
        }
    }

    pub fn n_gens(&self) -> usize {
        self.gen_names.len()
    }

    /// Quotient by the normal closure of the extra words.
    pub fn with_added_relators(&self, extra: &[Word]) -> Presentation {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().cloned());
        Presentation::new(self.gen_names.clone(), relators)
    }

    /// Parses "< a, b | w1, w2, ... >"; the relator section may be empty.
    pub fn parse(text: &str) -> Result<Presentation> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::Parse(format!("presentation must be <...>: {t:?}")))?;
        let (gens_part, rel_part) = match inner.split_once('|') {
            Some((g, r)) => (g, r),
            None => (inner, ""),
        };
        let gen_names: Vec<String> = gens_part
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        if gen_names.is_empty() {
            return Err(Error::Parse("no generators".into()));
        }
        for name in &gen_names {
            if !name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                || !name.chars().all(|c| c.is_ascii_alphanumeric())
            {
                return Err(Error::Parse(format!(
                    "generator name must start lowercase and be alphanumeric: {name:?}"
                )));
            }
        }
        let mut relators = Vec::new();
        for chunk in rel_part.split(',') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            relators.push(Word::parse(chunk, &gen_names)?);
        }
        Ok(Presentation::new(gen_names, relators))
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.gen_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.gen_names.join(", "))?;
        if !self.relators.is_empty() {
            let rs: Vec<String> = self
                .relators
                .iter()
                .map(|r| r.render(&self.gen_names))
                .collect();
            write!(f, " | {}", rs.join(", "))?;
        }
        write!(f, " >")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let p = Presentation::parse("< a, b | baabaBaaaaBa, abAB >").unwrap();
        assert_eq!(p.n_gens(), 2);
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.to_string(), "< a, b | baabaBaaaaBa, abAB >");
        let f = Presentation::parse("< x >").unwrap();
        assert!(f.relators.is_empty());
        assert_eq!(f.to_string(), "< x >");
        let multi = Presentation::parse("< a1, a2, b1 | a1b1A2 >").unwrap();
        assert_eq!(multi.relators[0].letters.len(), 3);
        assert!(Presentation::parse("a, b | ab").is_err());
        assert!(Presentation::parse("< A >").is_err());
    }

    #[test]
    fn reduction_on_build() {
        let p = Presentation::parse("< a, b | aAb, aA >").unwrap();
        // "aA" vanishes; "aAb" reduces to "b"
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0], p.word("b").unwrap());
    }

    #[test]
    fn added_relators() {
        let p = Presentation::parse("< a | aaaaa >").unwrap();
        let q = p.with_added_relators(&[p.word("aa").unwrap()]);
        assert_eq!(q.relators.len(), 2);
    }
}
