use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// Every uniform word of degree `d` and length `n` with `order` variables,
/// as dense symbol vectors in lexicographic order (letters before variables).
pub struct UniformWords {
    alphabet: u32,
    order: u32,
    n: usize,
    /// Copies of each variable still to place.
    left: Vec<usize>,
    letters_left: usize,
    stack: Vec<Symbol>,
    started: bool,
    done: bool,
}

impl UniformWords {
    pub fn new(order: usize, alphabet: usize, d: usize, n: usize) -> Result<Self> {
        if order == 0 || !d.is_multiple_of(order) || d == 0 {
            return Err(Error::InvalidDegree(format!(
                "{d} is not a positive multiple of {order}"
            )));
        }
        if d > n {
            return Err(Error::InvalidDegree(format!(
                "degree {d} exceeds length {n}"
            )));
        }
        if alphabet == 0 && n > d {
            return Err(Error::InvalidInput(
                "letter positions need a non-empty alphabet".into(),
            ));
        }
        Ok(UniformWords {
            alphabet: alphabet as u32,
            order: order as u32,
            n,
            left: vec![d / order; order],
            letters_left: n - d,
            stack: Vec::with_capacity(n),
            started: false,
            done: false,
        })
    }

    fn allowed(&self, s: Symbol) -> bool {
        match s {
            Symbol::Letter(_) => self.letters_left > 0,
            Symbol::Var(h) => self.left[h as usize] > 0,
        }
    }

    fn first_from(&self, s: Option<Symbol>) -> Option<Symbol> {
        let mut next = match s {
            None => Some(Symbol::Letter(0)),
            Some(s) => self.succ(s),
        };
        while let Some(c) = next {
            if (matches!(c, Symbol::Letter(_)) && self.alphabet == 0) || !self.allowed(c) {
                next = self.succ(c);
            } else {
                return Some(c);
            }
        }
        None
    }

    fn succ(&self, s: Symbol) -> Option<Symbol> {
        match s {
            Symbol::Letter(a) if a + 1 < self.alphabet => Some(Symbol::Letter(a + 1)),
            Symbol::Letter(_) => Some(Symbol::Var(0)),
            Symbol::Var(h) if h + 1 < self.order => Some(Symbol::Var(h + 1)),
            Symbol::Var(_) => None,
        }
    }

    fn take(&mut self, s: Symbol) {
        match s {
            Symbol::Letter(_) => self.letters_left -= 1,
            Symbol::Var(h) => self.left[h as usize] -= 1,
        }
        self.stack.push(s);
    }

    fn give_back(&mut self) -> Option<Symbol> {
        let s = self.stack.pop()?;
        match s {
            Symbol::Letter(_) => self.letters_left += 1,
            Symbol::Var(h) => self.left[h as usize] += 1,
        }
        Some(s)
    }

    fn fill(&mut self) {
        while self.stack.len() < self.n {
            let s = self
                .first_from(None)
                .expect("counts always leave a symbol to place");
            self.take(s);
        }
    }
}

impl Iterator for UniformWords {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.stack.clone());
        }
        loop {
            let Some(last) = self.give_back() else {
                self.done = true;
                return None;
            };
            if let Some(s) = self.first_from(Some(last)) {
                self.take(s);
                self.fill();
                return Some(self.stack.clone());
            }
        }
    }
}

/// The uniform words as [`Word`]s.
pub fn enumerate_uniform_words(
    order: usize,
    alphabet: usize,
    d: usize,
    n: usize,
) -> Result<impl Iterator<Item = Word>> {
    let it = UniformWords::new(order, alphabet, d, n)?;
    Ok(it.map(move |s| {
        Word::from_symbols(alphabet, order, s).expect("enumerated symbols are in range")
    }))
}

/// `n! / ((d/|H|)!^|H| (n-d)!) * alphabet^(n-d)`.
pub fn uniform_word_count(order: usize, alphabet: usize, d: usize, n: usize) -> Result<BigUint> {
    if order == 0 || !d.is_multiple_of(order) || d == 0 {
        return Err(Error::InvalidDegree(format!(
            "{d} is not a positive multiple of {order}"
        )));
    }
    if d > n {
        return Ok(BigUint::from(0u32));
    }
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
    let k = d / order;
    let placements = fact(n) / (fact(k).pow(order as u32) * fact(n - d));
    Ok(placements * BigUint::from(alphabet).pow((n - d) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(UniformWords::new(2, 2, 2, 3).unwrap().count(), 12);
        assert_eq!(UniformWords::new(2, 2, 2, 2).unwrap().count(), 2);
        assert!(matches!(
            UniformWords::new(2, 2, 3, 4),
            Err(Error::InvalidDegree(_))
        ));
    }

    #[test]
    fn order_is_lexicographic_and_words_are_uniform() {
        let all: Vec<Vec<Symbol>> = UniformWords::new(2, 2, 2, 3).unwrap().collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(
            all[0],
            vec![Symbol::Letter(0), Symbol::Var(0), Symbol::Var(1)]
        );
        for w in enumerate_uniform_words(3, 2, 3, 4).unwrap() {
            let a = w.analyze();
            assert!(a.uniform && a.degree == BigUint::from(3u32));
        }
    }

    #[test]
    fn count_law() {
        for order in 1..=3 {
            for n in 1..=8 {
                for d in (order..=n).step_by(order) {
                    for alphabet in 1..=3 {
                        let got = UniformWords::new(order, alphabet, d, n).unwrap().count();
                        assert_eq!(
                            BigUint::from(got),
                            uniform_word_count(order, alphabet, d, n).unwrap()
                        );
                    }
                }
            }
        }
    }
}
