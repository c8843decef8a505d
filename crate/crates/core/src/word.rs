//! Group words over named generators.
//!
//! A word is a sequence of letters (generator index, sign); powers are kept
//! expanded so free reduction and breadth-first search stay trivial. The
//! text form writes a generator name in lowercase and its inverse with the
//! leading letter uppercased, e.g. "baabaBaaaaBa" over generators a, b.

use std::fmt;

use crate::error::{Error, Result};
use crate::proj::ProjQuat;
use crate::quat::QuatRat;

/// One letter: generator index plus `true` for the generator itself,
/// `false` for its inverse.
pub type Letter = (usize, bool);

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: vec![] }
    }

    /// Single letter g^{±1}.
    pub fn letter(gen: usize, positive: bool) -> Self {
        Word {
            letters: vec![(gen, positive)],
        }
    }

    /// g^e with the power expanded.
    pub fn power(gen: usize, e: i64) -> Self {
        let positive = e >= 0;
        Word {
            letters: vec![(gen, positive); e.unsigned_abs() as usize],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, s)| (g, !s))
                .collect(),
        }
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &(g, s) in &self.letters {
            match out.last() {
                Some(&(h, t)) if h == g && t != s => {
                    out.pop();
                }
                _ => out.push((g, s)),
            }
        }
        Word { letters: out }
    }

    /// Freely reduces and then strips cancelling first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().letters;
        while w.len() >= 2 {
            let (g, s) = w[0];
            let (h, t) = *w.last().unwrap();
            if g == h && s != t {
                w.remove(0);
                w.pop();
            } else {
                break;
            }
        }
        Word { letters: w }
    }

    pub fn rotate(&self, by: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let n = self.letters.len();
        let by = by % n;
        let mut letters = self.letters[by..].to_vec();
        letters.extend_from_slice(&self.letters[..by]);
        Word { letters }
    }

    pub fn rotations(&self) -> Vec<Word> {
        (0..self.letters.len().max(1))
            .map(|r| self.rotate(r))
            .collect()
    }

    /// Commutator [u, v] = u v u^{-1} v^{-1}, freely reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v)
            .concat(&u.inverse())
            .concat(&v.inverse())
            .free_reduce()
    }

    /// Net exponent of each generator, for abelianization rows.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n_gens];
        for &(g, s) in &self.letters {
            sums[g] += if s { 1 } else { -1 };
        }
        sums
    }

    /// True if the two words agree up to cyclic rotation and/or inversion,
    /// after cyclic reduction of both.
    pub fn equivalent_up_to_rotation_inversion(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let binv = b.inverse();
        a.rotations().iter().any(|r| *r == b || *r == binv)
    }

    /// Exact quaternion value of the word under the generator assignment.
    pub fn eval(&self, values: &[QuatRat]) -> Result<QuatRat> {
        let mut acc = QuatRat::one();
        let mut inverses: Vec<Option<QuatRat>> = vec![None; values.len()];
        for &(g, s) in &self.letters {
            let v = values.get(g).ok_or(Error::UnboundGenerator(g))?;
            if v.is_zero() {
                return Err(Error::ZeroQuaternion);
            }
            if s {
                acc = &acc * v;
            } else {
                if inverses[g].is_none() {
                    inverses[g] = Some(v.inv()?);
                }
                acc = &acc * inverses[g].as_ref().unwrap();
            }
        }
        Ok(acc)
    }

    /// Projective value: the image of `eval` in the projective model.
    pub fn eval_proj(&self, values: &[QuatRat]) -> Result<ProjQuat> {
        ProjQuat::normalize_rat(&self.eval(values)?)
    }

    /// Parses a word over the given generator names, lowercase for the
    /// generator and leading-letter-uppercased for its inverse; at each
    /// position the longest matching name wins.
    pub fn parse(text: &str, gen_names: &[String]) -> Result<Word> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut forms: Vec<(String, Letter)> = Vec::new();
        for (idx, name) in gen_names.iter().enumerate() {
            forms.push((name.clone(), (idx, true)));
            let mut inv = String::new();
            let mut chars = name.chars();
            if let Some(c) = chars.next() {
                inv.extend(c.to_uppercase());
                inv.extend(chars);
            }
            forms.push((inv, (idx, false)));
        }
        // longest names first so "a1" beats "a"
        forms.sort_by(|x, y| y.0.len().cmp(&x.0.len()));
        let mut letters = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let hit = forms.iter().find(|(f, _)| rest.starts_with(f.as_str()));
            match hit {
                Some((f, l)) => {
                    letters.push(*l);
                    rest = &rest[f.len()..];
                }
                None => {
                    return Err(Error::Parse(format!(
                        "unknown generator at {rest:?} in word {text:?}"
                    )))
                }
            }
        }
        Ok(Word { letters })
    }

    /// Renders the word with the generator-name/uppercase-inverse convention.
    pub fn render(&self, gen_names: &[String]) -> String {
        let mut out = String::new();
        for &(g, s) in &self.letters {
            let name = &gen_names[g];
            if s {
                out.push_str(name);
            } else {
                let mut chars = name.chars();
                if let Some(c) = chars.next() {
                    out.extend(c.to_uppercase());
                    out.extend(chars);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(g, s) in &self.letters {
            write!(f, "{}{}", if s { "g" } else { "G" }, g)?;
        }
        if self.letters.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn w(text: &str, gens: &[&str]) -> Word {
        Word::parse(text, &names(gens)).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let gens = names(&["a", "b"]);
        let r1 = Word::parse("baabaBaaaaBa", &gens).unwrap();
        assert_eq!(r1.len(), 12);
        assert_eq!(r1.render(&gens), "baabaBaaaaBa");
        assert_eq!(r1, r1.free_reduce());
        // multi-char generator names with longest-match
        let gq = names(&["a1", "a2", "b1"]);
        let u = Word::parse("a1b1A2", &gq).unwrap();
        assert_eq!(u.letters, vec![(0, true), (2, true), (1, false)]);
        assert_eq!(u.render(&gq), "a1b1A2");
    }

    #[test]
    fn reduction() {
        assert_eq!(w("aAb", &["a", "b"]).free_reduce(), w("b", &["a", "b"]));
        assert!(w("aA", &["a", "b"]).free_reduce().is_empty());
        assert_eq!(w("baabAB", &["a", "b"]).cyclic_reduce(), w("aabA", &["a", "b"]).cyclic_reduce());
        let v = w("abAB", &["a", "b"]);
        assert_eq!(v.inverse(), w("baBA", &["a", "b"]));
        assert!(v.concat(&v.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn rotation_equivalence() {
        let gens = ["a", "b"];
        let u = w("abAB", &gens);
        assert!(u.equivalent_up_to_rotation_inversion(&w("bABa", &gens)));
        assert!(u.equivalent_up_to_rotation_inversion(&w("baBA", &gens)));
        assert!(!u.equivalent_up_to_rotation_inversion(&w("abab", &gens)));
    }

    #[test]
    fn eval_words() {
        let x: QuatRat = "1+j+k".parse().unwrap();
        let y: QuatRat = "1+2j".parse().unwrap();
        let vals = vec![x, y];
        // two norm-1 relators of <1+j+k, 1+2j>
        let gens = ["a", "b"];
        let r4 = w("baabABBBAABabb", &gens);
        assert_eq!(r4.len(), 14);
        assert!(r4.eval(&vals).unwrap().is_one());
        let r5 = w("aBaaBaBAABAAbAAbAbaaba", &gens);
        assert_eq!(r5.len(), 22);
        assert!(r5.eval(&vals).unwrap().is_one());
        // empty word
        assert!(Word::empty().eval(&vals).unwrap().is_one());
        // w1 = x y^{-1} x^{-1} y^{-1} x^{-2} y^{-2} = (5+4i+6j-2k)/675
        let w1 = w("aBABAABB", &gens);
        let direct: QuatRat = "5/675+4/675i+6/675j-2/675k".parse().unwrap();
        assert_eq!(w1.eval(&vals).unwrap(), direct);
    }

    #[test]
    fn eval_is_homomorphism() {
        let x: QuatRat = "1+j+k".parse().unwrap();
        let y: QuatRat = "1+2j".parse().unwrap();
        let vals = vec![x, y];
        let gens = ["a", "b"];
        let u = w("abA", &gens);
        let v = w("Bab", &gens);
        let lhs = u.concat(&v).eval(&vals).unwrap();
        let rhs = &u.eval(&vals).unwrap() * &v.eval(&vals).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exponent_sums() {
        let u = w("baabaBaaaaBa", &["a", "b"]);
        assert_eq!(u.exponent_sums(2), vec![8, 0]);
    }
}
