use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::words::ConstantWord;

/// A color. Base colorings use `Index` in `0..r`; derived colorings whose
/// palette is a product of palettes use a digest of the component colors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Index(u64),
    Digest([u8; 32]),
}

impl Color {
    /// Canonical fingerprint of an ordered tuple of colors.
    pub fn tuple(parts: &[Color]) -> Color {
        let mut h = Sha256::new();
        h.update((parts.len() as u64).to_le_bytes());
        for c in parts {
            match c {
                Color::Index(i) => {
                    h.update([0u8]);
                    h.update(i.to_le_bytes());
                }
                Color::Digest(d) => {
                    h.update([1u8]);
                    h.update(d);
                }
            }
        }
        Color::Digest(h.finalize().into())
    }

    pub fn index(self) -> Option<u64> {
        match self {
            Color::Index(i) => Some(i),
            Color::Digest(_) => None,
        }
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Index(i) => write!(f, "{i}"),
            Color::Digest(d) => write!(f, "#{}", hex::encode(&d[..6])),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Color::Index(i) => s.serialize_u64(*i),
            Color::Digest(d) => s.serialize_str(&hex::encode(d)),
        }
    }
}

type Source = dyn Fn(&[u32]) -> Result<Color> + Send + Sync;

/// A memoized coloring of all words of one length over one alphabet.
pub struct ColoringOracle {
    length: BigUint,
    alphabet: usize,
    colors: Magnitude,
    label: String,
    source: Arc<Source>,
    memo: RwLock<HashMap<[u8; 32], Color>>,
    calls: AtomicU64,
    evaluations: AtomicU64,
    limits: Limits,
}

impl fmt::Debug for ColoringOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoringOracle")
            .field("label", &self.label)
            .field("length", &self.length)
            .field("alphabet", &self.alphabet)
            .field("colors", &self.colors)
            .finish()
    }
}

impl ColoringOracle {
    pub fn new(
        label: impl Into<String>,
        length: impl Into<BigUint>,
        alphabet: usize,
        colors: impl Into<Magnitude>,
        limits: Limits,
        source: impl Fn(&[u32]) -> Result<Color> + Send + Sync + 'static,
    ) -> Arc<Self> {
        Arc::new(ColoringOracle {
            length: length.into(),
            alphabet,
            colors: colors.into(),
            label: label.into(),
            source: Arc::new(source),
            memo: RwLock::new(HashMap::new()),
            calls: AtomicU64::new(0),
            evaluations: AtomicU64::new(0),
            limits,
        })
    }

    pub fn length(&self) -> &BigUint {
        &self.length
    }

    pub fn length_usize(&self) -> Result<usize> {
        self.length
            .to_usize()
            .filter(|&n| n as u64 <= self.limits.dense_symbols)
            .ok_or_else(|| {
                Error::OverflowBudget(format!(
                    "oracle length {} exceeds the dense budget",
                    self.length
                ))
            })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn colors(&self) -> &Magnitude {
        &self.colors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Queries answered, including memo hits.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    /// Queries that reached the underlying coloring.
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn is_monochrome(&self) -> bool {
        self.colors.to_u64() == Some(1)
    }

    pub fn query(&self, letters: &[u32]) -> Result<Color> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        if BigUint::from(letters.len()) != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length.to_string(),
                actual: letters.len().to_string(),
            });
        }
        if self.is_monochrome() {
            return Ok(Color::Index(0));
        }
        if let Some(&bad) = letters.iter().find(|&&a| a as usize >= self.alphabet) {
            return Err(Error::IndexOutOfRange(format!(
                "letter {bad} outside alphabet of size {}",
                self.alphabet
            )));
        }
        let key = fingerprint(letters);
        if let Some(c) = self.memo.read().get(&key) {
            return Ok(*c);
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let c = (self.source)(letters)?;
        self.memo.write().insert(key, c);
        Ok(c)
    }

    pub fn query_word(&self, w: &ConstantWord) -> Result<Color> {
        if w.len() != &self.length {
            return Err(Error::LengthMismatch {
                expected: self.length.to_string(),
                actual: w.len().to_string(),
            });
        }
        if self.is_monochrome() {
            self.calls.fetch_add(1, Ordering::Relaxed);
            return Ok(Color::Index(0));
        }
        self.query(&w.letters(self.limits.dense_symbols)?)
    }
}

fn fingerprint(letters: &[u32]) -> [u8; 32] {
    let mut h = Sha256::new();
    for a in letters {
        h.update(a.to_le_bytes());
    }
    h.finalize().into()
}

/// JSON coloring document; colors are `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ColoringSpec {
    /// Colors listed by the lexicographic rank of the word (first letter most
    /// significant).
    Table {
        colors: Vec<u64>,
    },
    /// Letter at a 1-based position, reduced mod `r`.
    Coordinate {
        index: usize,
    },
    /// Sum of the letters mod `m`, `m <= r`.
    Histogram {
        #[serde(rename = "mod")]
        modulus: u64,
    },
    /// Hash of the seed and the word, reduced mod `r`.
    Random {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Constant {
        color: u64,
    },
}

impl ColoringSpec {
    /// The coloring as an oracle on words of `length` letters from
    /// `0..alphabet`, with `r` colors. `seed` fills in a missing random seed.
    pub fn build(
        &self,
        length: usize,
        alphabet: usize,
        r: u64,
        seed: u64,
        limits: Limits,
    ) -> Result<Arc<ColoringOracle>> {
        if r == 0 {
            return Err(Error::InvalidInput(
                "a coloring needs at least one color".into(),
            ));
        }
        if alphabet == 0 {
            return Err(Error::InvalidInput("empty alphabet".into()));
        }
        let label = serde_json::to_string(self)?;
        let rr = r;
        let oracle = match self.clone() {
            ColoringSpec::Table { colors } => {
                let expected = (alphabet as u128)
                    .checked_pow(length as u32)
                    .filter(|&n| n <= limits.dense_symbols as u128);
                if expected != Some(colors.len() as u128) {
                    return Err(Error::LengthMismatch {
                        expected: format!("{alphabet}^{length}"),
                        actual: colors.len().to_string(),
                    });
                }
                if let Some(bad) = colors.iter().find(|&&c| c >= r) {
                    return Err(Error::InvalidInput(format!(
                        "table color {bad} outside 0..{r}"
                    )));
                }
                ColoringOracle::new(label, length, alphabet, r, limits, move |w| {
                    let rank = w.iter().fold(0usize, |acc, &a| acc * alphabet + a as usize);
                    Ok(Color::Index(colors[rank]))
                })
            }
            ColoringSpec::Coordinate { index } => {
                if index == 0 || index > length {
                    return Err(Error::IndexOutOfRange(format!(
                        "coordinate {index} outside 1..={length}"
                    )));
                }
                ColoringOracle::new(label, length, alphabet, r, limits, move |w| {
                    Ok(Color::Index(w[index - 1] as u64 % rr))
                })
            }
            ColoringSpec::Histogram { modulus } => {
                if modulus == 0 || modulus > r {
                    return Err(Error::InvalidInput(format!(
                        "histogram modulus {modulus} outside 1..={r}"
                    )));
                }
                ColoringOracle::new(label, length, alphabet, r, limits, move |w| {
                    Ok(Color::Index(
                        w.iter().map(|&a| a as u64 % modulus).sum::<u64>() % modulus,
                    ))
                })
            }
            ColoringSpec::Random { seed: s } => {
                let s = s.unwrap_or(seed);
                ColoringOracle::new(label, length, alphabet, r, limits, move |w| {
                    let mut h = Sha256::new();
                    h.update(s.to_le_bytes());
                    for a in w {
                        h.update(a.to_le_bytes());
                    }
                    let d: [u8; 32] = h.finalize().into();
                    Ok(Color::Index(
                        u64::from_le_bytes(d[..8].try_into().unwrap()) % rr,
                    ))
                })
            }
            ColoringSpec::Constant { color } => {
                if color >= r {
                    return Err(Error::InvalidInput(format!(
                        "constant color {color} outside 0..{r}"
                    )));
                }
                ColoringOracle::new(label, length, alphabet, r, limits, move |_| {
                    Ok(Color::Index(color))
                })
            }
        };
        Ok(oracle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_colorings() {
        let l = Limits::default();
        let table = ColoringSpec::Table {
            colors: vec![0, 1, 1, 0],
        }
        .build(2, 2, 2, 0, l)
        .unwrap();
        assert_eq!(table.query(&[1, 0]).unwrap(), Color::Index(1));
        assert_eq!(table.query(&[1, 1]).unwrap(), Color::Index(0));
        let coord = ColoringSpec::Coordinate { index: 2 }
            .build(3, 3, 2, 0, l)
            .unwrap();
        assert_eq!(coord.query(&[0, 2, 1]).unwrap(), Color::Index(0));
        let hist = ColoringSpec::Histogram { modulus: 3 }
            .build(3, 3, 3, 0, l)
            .unwrap();
        assert_eq!(hist.query(&[2, 2, 1]).unwrap(), Color::Index(2));
        assert!(matches!(
            coord.query(&[0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn random_is_deterministic_and_memoized() {
        let l = Limits::default();
        let a = ColoringSpec::Random { seed: Some(7) }
            .build(4, 2, 5, 0, l)
            .unwrap();
        let b = ColoringSpec::Random { seed: None }
            .build(4, 2, 5, 7, l)
            .unwrap();
        for w in [[0, 1, 1, 0], [1, 1, 1, 1], [0, 0, 0, 1]] {
            assert_eq!(a.query(&w).unwrap(), b.query(&w).unwrap());
            assert_eq!(a.query(&w).unwrap(), a.query(&w).unwrap());
        }
        assert_eq!(a.calls(), 9);
        assert_eq!(a.evaluations(), 3);
    }

    #[test]
    fn single_color_short_circuits() {
        let o = ColoringOracle::new("never", 3u32, 2, 1u64, Limits::default(), |_| {
            Err(Error::Internal("should not be evaluated".into()))
        });
        assert_eq!(o.query(&[0, 1, 1]).unwrap(), Color::Index(0));
    }

    #[test]
    fn spec_documents_parse() {
        for text in [
            r#"{"kind":"table","colors":[0,1]}"#,
            r#"{"kind":"coordinate","index":1}"#,
            r#"{"kind":"histogram","mod":2}"#,
            r#"{"kind":"random","seed":3}"#,
            r#"{"kind":"random"}"#,
            r#"{"kind":"constant","color":0}"#,
        ] {
            let s: ColoringSpec = serde_json::from_str(text).unwrap();
            assert_eq!(serde_json::to_string(&s).unwrap(), text);
        }
    }
}
