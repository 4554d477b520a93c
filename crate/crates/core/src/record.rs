//! Persisted search results: one text line per code.
//!
//! ```text
//! double-nega z4 8 base=1,1,1,0 lift=1,3,3,0 border=- d_lee=4 d_ham_base=4
//! ```
//!
//! For bordered codes `base` and `lift` are the core vectors and `border` is
//! the lifted `(β, γ, δ)`; the base border is its projection.

use std::fmt;
use std::str::FromStr;

use crate::circulant::{format_digits, parse_digits, Border, CircVec, CodeSpec};
use crate::distance::{min_hamming_distance, min_lee_distance};
use crate::error::{Error, Result};
use crate::ring::ChainRing;

/// Code family searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `(I | cir_{-1}(a))`
    DoubleNega,
    /// `(I | cir_1(a))`
    DoubleCirc,
    /// `(I | bordered cir_1(a))`
    BorderedCirc,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::DoubleNega, Family::DoubleCirc, Family::BorderedCirc];

    pub fn name(self) -> &'static str {
        match self {
            Family::DoubleNega => "double-nega",
            Family::DoubleCirc => "double-circ",
            Family::BorderedCirc => "bordered-circ",
        }
    }

    pub fn is_bordered(self) -> bool {
        self == Family::BorderedCirc
    }

    /// `ring` with the family's `α` attached.
    pub fn ring_with_alpha(self, ring: ChainRing) -> Result<ChainRing> {
        let alpha = match self {
            Family::DoubleNega => ring.minus_one(),
            Family::DoubleCirc | Family::BorderedCirc => crate::ring::RingElem::ONE,
        };
        ring.with_alpha(alpha)
    }

    /// Length of the circulant core for code length `n`.
    pub fn core_len(self, n: usize) -> usize {
        if self.is_bordered() {
            n / 2 - 1
        } else {
            n / 2
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?} (expected double-nega, double-circ or bordered-circ)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchRecord {
    pub family: Family,
    pub ring: String,
    pub n: usize,
    pub base: Vec<u32>,
    pub lift: Vec<u32>,
    pub border: Option<[u32; 3]>,
    pub d_lee: u32,
    pub d_ham_base: u32,
}

impl SearchRecord {
    /// Record for the lifted code `spec` of `base`.
    pub fn new(family: Family, base: &CodeSpec, spec: &CodeSpec, d_lee: u32, d_ham_base: u32) -> Self {
        SearchRecord {
            family,
            ring: spec.ring().name(),
            n: spec.n(),
            base: base.core().values(),
            lift: spec.core().values(),
            border: spec.border().map(|b| b.values()),
            d_lee,
            d_ham_base,
        }
    }

    /// The lifted code described by this record.
    pub fn spec(&self) -> Result<CodeSpec> {
        let ring = self.family.ring_with_alpha(ChainRing::parse(&self.ring)?)?;
        let alpha = ring.alpha().expect("family sets alpha");
        let core = CircVec::new(ring, alpha, to_elems(ring, &self.lift)?)?;
        match (self.family.is_bordered(), self.border) {
            (false, None) => Ok(CodeSpec::double(core)),
            (true, Some([b, g, d])) => {
                CodeSpec::bordered(core, Border::new(ring.elem(b)?, ring.elem(g)?, ring.elem(d)?))
            }
            _ => Err(Error::Parse(format!("border field does not match family {}", self.family))),
        }
    }

    /// The residue-field code this record was lifted from.
    pub fn base_spec(&self) -> Result<CodeSpec> {
        let spec = self.spec()?;
        let field = spec.ring().residue_field();
        let core = CircVec::new(field, field.alpha().expect("alpha projects"), to_elems(field, &self.base)?)?;
        match spec.border() {
            None => Ok(CodeSpec::double(core)),
            Some(b) => CodeSpec::bordered(core, b.project_to(field)),
        }
    }
}

fn to_elems(ring: ChainRing, values: &[u32]) -> Result<Vec<crate::ring::RingElem>> {
    values.iter().map(|&v| ring.elem(v)).collect()
}

impl fmt::Display for SearchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let border = match self.border {
            Some(b) => format_digits(&b),
            None => "-".to_string(),
        };
        write!(
            f,
            "{} {} {} base={} lift={} border={} d_lee={} d_ham_base={}",
            self.family,
            self.ring,
            self.n,
            format_digits(&self.base),
            format_digits(&self.lift),
            border,
            self.d_lee,
            self.d_ham_base
        )
    }
}

impl FromStr for SearchRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [family, ring, n, base, lift, border, d_lee, d_ham] = parts[..] else {
            return Err(Error::Parse(format!("expected 8 fields, got {}: {line:?}", parts.len())));
        };
        let field = |text: &str, key: &str| -> Result<String> {
            text.strip_prefix(key)
                .and_then(|t| t.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("expected {key}=..., got {text:?}")))
        };
        let int = |text: String, key: &str| -> Result<u32> {
            text.parse().map_err(|_| Error::Parse(format!("{key} is not an integer: {text:?}")))
        };
        let border = field(border, "border")?;
        let border = if border == "-" {
            None
        } else {
            let v = parse_digits(&border)?;
            let b: [u32; 3] = v
                .try_into()
                .map_err(|_| Error::Parse(format!("border needs 3 entries: {border:?}")))?;
            Some(b)
        };
        Ok(SearchRecord {
            family: family.parse()?,
            ring: ChainRing::parse(ring)?.name(),
            n: n.parse().map_err(|_| Error::Parse(format!("length is not an integer: {n:?}")))?,
            base: parse_digits(&field(base, "base")?)?,
            lift: parse_digits(&field(lift, "lift")?)?,
            border,
            d_lee: int(field(d_lee, "d_lee")?, "d_lee")?,
            d_ham_base: int(field(d_ham, "d_ham_base")?, "d_ham_base")?,
        })
    }
}

/// Re-derives everything a record claims: self-duality of the lifted code,
/// its projection onto the recorded base, the stated length and both
/// distances. Errors only on values that do not fit the ring or family.
pub fn verify_record(rec: &SearchRecord) -> Result<bool> {
    let spec = rec.spec()?;
    if spec.n() != rec.n || !spec.is_self_dual() {
        return Ok(false);
    }
    let base = rec.base_spec()?;
    if base.k() != spec.k() {
        return Ok(false);
    }
    let field = base.ring();
    let projected = if spec.ring().m() == 1 { spec.clone() } else { spec.project_to(field)? };
    if projected.core().values() != base.core().values() || !base.is_self_dual() {
        return Ok(false);
    }
    Ok(min_lee_distance(&spec, None) == rec.d_lee && min_hamming_distance(&base) == rec.d_ham_base)
}

/// Parses a results file, skipping blank lines and `#` summary lines.
pub fn parse_records(text: &str) -> Result<Vec<SearchRecord>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}
