//! Text formats for DGAs, cobordism maps and augmentations.
//!
//! One directive per line, whitespace separated, `#` starts a comment:
//!
//! ```text
//! ring Z
//! chord a 1
//! chord b 0
//! disk a -> b b sign -1
//! disk a -> sign 1        # empty word: the unit
//! ```

mod augmentation;
mod cobordism;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::dga::{valid_chord_name, Dga, DgaError, Element, Ring};

pub use augmentation::{parse_augmentation, serialize_augmentation};
pub use cobordism::{
    parse_cobordism, parse_cobordism_document, serialize_morphism, serialize_morphism_inline,
    serialize_morphism_with_paths, CobordismDocument, DgaSource, ParsedMorphism, SOURCE_PREFIX, TARGET_PREFIX,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IngestErrorKind {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("{0}")]
    Syntax(String),
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("ring declared twice")]
    DuplicateRing,
    #[error("unknown ring {0:?}, expected Z or Z2")]
    UnknownRing(String),
    #[error("chord {0:?} declared twice")]
    DuplicateChord(String),
    #[error("invalid chord name {0:?}")]
    InvalidName(String),
    #[error("undefined chord {0:?}")]
    UndefinedChord(String),
    #[error("grading {0:?} is not an integer")]
    BadGrading(String),
    #[error("count {0:?} is not a nonzero integer")]
    BadCount(String),
    #[error("value {0:?} is not an integer")]
    BadValue(String),
    #[error("chord {0:?} needs the {1:?} prefix")]
    Namespace(String, &'static str),
    #[error("augmentation is nonzero on chord {chord:?} of grading {grading}")]
    OffDegree { chord: String, grading: i64 },
}

/// A parse failure with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct IngestError {
    pub line: usize,
    pub column: usize,
    pub kind: IngestErrorKind,
}

impl IngestError {
    fn at(tok: &Token, kind: IngestErrorKind) -> Self {
        IngestError {
            line: tok.line,
            column: tok.column,
            kind,
        }
    }
}

/// A disk record whose grading violates the rigidity condition. Reported,
/// not rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionWarning {
    pub line: usize,
    pub chord: String,
    pub word: Vec<String>,
    pub expected: i64,
    pub found: i64,
}

impl fmt::Display for DimensionWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}: {} -> {} has grading {}, expected {}",
            self.line,
            self.chord,
            if self.word.is_empty() {
                "1".to_string()
            } else {
                self.word.join(" ")
            },
            self.found,
            self.expected
        )
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Decodes bytes, reporting the position of the first invalid sequence.
pub fn decode(bytes: &[u8]) -> Result<&str, IngestError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let good = &bytes[..e.valid_up_to()];
        let line = good.iter().filter(|&&b| b == b'\n').count() + 1;
        let start = good.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let column = String::from_utf8_lossy(&good[start..]).chars().count() + 1;
        IngestError {
            line,
            column,
            kind: IngestErrorKind::InvalidUtf8,
        }
    })
}

/// Non-empty lines split into tokens, with comments and `\r` removed.
pub(crate) fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        let mut col = 0;
        for (byte, ch) in body.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some((b, c)) = start.take() {
                    toks.push(Token {
                        text: &body[b..byte],
                        line: i + 1,
                        column: c,
                    });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((b, c)) = start {
            toks.push(Token {
                text: &body[b..],
                line: i + 1,
                column: c,
            });
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

fn end_of_line(toks: &[Token]) -> (usize, usize) {
    let last = toks.last().expect("lines are non-empty");
    (last.line, last.column + last.text.chars().count())
}

fn syntax(toks: &[Token], msg: impl Into<String>) -> IngestError {
    let (line, column) = end_of_line(toks);
    IngestError {
        line,
        column,
        kind: IngestErrorKind::Syntax(msg.into()),
    }
}

fn expect_len(toks: &[Token], n: usize, usage: &str) -> Result<(), IngestError> {
    match toks.len().cmp(&n) {
        std::cmp::Ordering::Less => Err(syntax(toks, format!("expected `{usage}`"))),
        std::cmp::Ordering::Greater => Err(IngestError::at(
            &toks[n],
            IngestErrorKind::Syntax(format!("unexpected token {:?}, expected `{usage}`", toks[n].text)),
        )),
        std::cmp::Ordering::Equal => Ok(()),
    }
}

pub(crate) fn parse_int<T: FromStr>(tok: &Token, kind: fn(String) -> IngestErrorKind) -> Result<T, IngestError> {
    tok.text
        .parse()
        .map_err(|_| IngestError::at(tok, kind(tok.text.to_string())))
}

fn parse_count(tok: &Token) -> Result<BigInt, IngestError> {
    let c: BigInt = parse_int(tok, IngestErrorKind::BadCount)?;
    if c.is_zero() {
        return Err(IngestError::at(tok, IngestErrorKind::BadCount(tok.text.to_string())));
    }
    Ok(c)
}

/// `<pos> -> <neg>* sign <count>`, starting after the `disk` keyword.
pub(crate) struct RawDisk<'a> {
    pub positive: Token<'a>,
    pub word: Vec<Token<'a>>,
    pub count: BigInt,
}

pub(crate) fn parse_disk<'a>(toks: &[Token<'a>]) -> Result<RawDisk<'a>, IngestError> {
    const USAGE: &str = "disk <chord> -> <chord>* sign <count>";
    if toks.len() < 5 {
        return Err(syntax(toks, format!("expected `{USAGE}`")));
    }
    if toks[2].text != "->" {
        return Err(IngestError::at(
            &toks[2],
            IngestErrorKind::Syntax(format!("expected `->`, found {:?}", toks[2].text)),
        ));
    }
    let n = toks.len();
    if toks[n - 2].text != "sign" {
        return Err(IngestError::at(
            &toks[n - 2],
            IngestErrorKind::Syntax(format!(
                "expected `sign <count>` at the end, found {:?}",
                toks[n - 2].text
            )),
        ));
    }
    let word = toks[3..n - 2].to_vec();
    if let Some(t) = word.iter().find(|t| t.text == "->" || t.text == "sign") {
        return Err(IngestError::at(
            t,
            IngestErrorKind::Syntax(format!("unexpected {:?} inside the word", t.text)),
        ));
    }
    Ok(RawDisk {
        positive: toks[1].clone(),
        word,
        count: parse_count(&toks[n - 1])?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDecl {
    pub name: String,
    pub grading: i64,
}

/// One signed count of disks with positive puncture `positive` and negative
/// word `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskRecord {
    pub positive: String,
    pub word: Vec<String>,
    pub count: BigInt,
}

/// A parsed DGA file, in file order. Repeated records are kept; they add up
/// when the DGA is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaDocument {
    pub ring: Ring,
    pub chords: Vec<ChordDecl>,
    pub records: Vec<DiskRecord>,
}

/// Collects the lines of one DGA document; used for standalone files and for
/// the inline `src.` / `tgt.` blocks of cobordism files.
#[derive(Default)]
pub(crate) struct DgaBuilder<'a> {
    ring: Option<Ring>,
    chords: Vec<(Token<'a>, i64)>,
    disks: Vec<RawDisk<'a>>,
}

impl<'a> DgaBuilder<'a> {
    /// `toks[0]` is the directive with any namespace prefix removed, given
    /// separately as `directive`.
    pub fn line(&mut self, directive: &str, toks: &[Token<'a>]) -> Result<(), IngestError> {
        match directive {
            "ring" => {
                expect_len(toks, 2, "ring Z|Z2")?;
                if self.ring.is_some() {
                    return Err(IngestError::at(&toks[0], IngestErrorKind::DuplicateRing));
                }
                self.ring = Some(match toks[1].text {
                    "Z" => Ring::Integers,
                    "Z2" => Ring::Z2,
                    other => return Err(IngestError::at(&toks[1], IngestErrorKind::UnknownRing(other.into()))),
                });
            }
            "chord" => {
                expect_len(toks, 3, "chord <name> <grading>")?;
                if !valid_chord_name(toks[1].text) {
                    return Err(IngestError::at(
                        &toks[1],
                        IngestErrorKind::InvalidName(toks[1].text.into()),
                    ));
                }
                let g = parse_int(&toks[2], IngestErrorKind::BadGrading)?;
                self.chords.push((toks[1].clone(), g));
            }
            "disk" => self.disks.push(parse_disk(toks)?),
            other => {
                return Err(IngestError::at(
                    &toks[0],
                    IngestErrorKind::UnknownDirective(other.into()),
                ))
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(DgaDocument, Vec<DimensionWarning>), IngestError> {
        let mut grading: HashMap<&str, i64> = HashMap::new();
        let mut chords = Vec::new();
        for (tok, g) in &self.chords {
            if grading.insert(tok.text, *g).is_some() {
                return Err(IngestError::at(tok, IngestErrorKind::DuplicateChord(tok.text.into())));
            }
            chords.push(ChordDecl {
                name: tok.text.to_string(),
                grading: *g,
            });
        }
        let lookup = |t: &Token| {
            grading
                .get(t.text)
                .copied()
                .ok_or_else(|| IngestError::at(t, IngestErrorKind::UndefinedChord(t.text.into())))
        };
        let mut records = Vec::new();
        let mut warnings = Vec::new();
        for d in self.disks {
            let expected = lookup(&d.positive)? - 1;
            let mut found = 0;
            for t in &d.word {
                found += lookup(t)?;
            }
            let word: Vec<String> = d.word.iter().map(|t| t.text.to_string()).collect();
            if found != expected {
                warnings.push(DimensionWarning {
                    line: d.positive.line,
                    chord: d.positive.text.to_string(),
                    word: word.clone(),
                    expected,
                    found,
                });
            }
            records.push(DiskRecord {
                positive: d.positive.text.to_string(),
                word,
                count: d.count,
            });
        }
        let doc = DgaDocument {
            ring: self.ring.unwrap_or(Ring::Integers),
            chords,
            records,
        };
        Ok((doc, warnings))
    }
}

impl DgaDocument {
    /// Chords in declaration order. Over `Z2` every count is reduced into
    /// `{0, 1}`.
    pub fn to_dga(&self) -> Result<Dga, DgaError> {
        let mut d = Dga::new(self.ring);
        for c in &self.chords {
            d.add_chord(&c.name, c.grading)?;
        }
        let mut diff = vec![Element::zero(); d.len()];
        for r in &self.records {
            let a = d.id(&r.positive)?;
            let names: Vec<&str> = r.word.iter().map(String::as_str).collect();
            diff[a].add_term(d.word(&names)?, r.count.clone());
        }
        for (a, e) in diff.into_iter().enumerate() {
            let e = if self.ring == Ring::Z2 { e.mod2() } else { e };
            d.set_differential(a, e)?;
        }
        Ok(d)
    }

    /// Canonical document: chords by name, records by positive chord and
    /// then word, one record per distinct word.
    pub fn from_dga(dga: &Dga) -> Self {
        let mut chords: Vec<ChordDecl> = dga
            .chords()
            .iter()
            .map(|c| ChordDecl {
                name: c.name.clone(),
                grading: c.grading,
            })
            .collect();
        chords.sort_by(|x, y| x.name.cmp(&y.name));
        let name = |x: usize| dga.chord(x).name.clone();
        let mut records: Vec<DiskRecord> = (0..dga.len())
            .flat_map(|a| {
                dga.differential(a).terms().map(move |(w, c)| DiskRecord {
                    positive: name(a),
                    word: w.iter().map(|&x| name(x)).collect(),
                    count: c.clone(),
                })
            })
            .collect();
        sort_records(&mut records);
        DgaDocument {
            ring: dga.ring(),
            chords,
            records,
        }
    }
}

pub(crate) fn sort_records(records: &mut [DiskRecord]) {
    records.sort_by(|x, y| x.positive.cmp(&y.positive).then_with(|| x.word.cmp(&y.word)));
}

pub(crate) fn ring_tag(r: Ring) -> &'static str {
    match r {
        Ring::Integers => "Z",
        Ring::Z2 => "Z2",
    }
}

pub(crate) fn write_record(out: &mut String, r: &DiskRecord, pos_prefix: &str, word_prefix: &str) {
    out.push_str("disk ");
    out.push_str(pos_prefix);
    out.push_str(&r.positive);
    out.push_str(" ->");
    for x in &r.word {
        out.push(' ');
        out.push_str(word_prefix);
        out.push_str(x);
    }
    out.push_str(&format!(" sign {}\n", r.count));
}

/// Writes `doc` in its own order, with LF line endings.
pub fn serialize_document(doc: &DgaDocument) -> String {
    serialize_prefixed(doc, "")
}

pub(crate) fn serialize_prefixed(doc: &DgaDocument, prefix: &str) -> String {
    let mut out = format!("{prefix}ring {}\n", ring_tag(doc.ring));
    for c in &doc.chords {
        out.push_str(&format!("{prefix}chord {} {}\n", c.name, c.grading));
    }
    for r in &doc.records {
        out.push_str(prefix);
        write_record(&mut out, r, "", "");
    }
    out
}

/// Byte-deterministic text for `dga`.
pub fn serialize_dga(dga: &Dga) -> String {
    serialize_document(&DgaDocument::from_dga(dga))
}

pub fn parse_dga_document(text: &str) -> Result<(DgaDocument, Vec<DimensionWarning>), IngestError> {
    let mut b = DgaBuilder::default();
    for toks in tokenize(text) {
        b.line(toks[0].text, &toks)?;
    }
    b.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDga {
    pub dga: Dga,
    pub document: DgaDocument,
    pub warnings: Vec<DimensionWarning>,
}

pub fn parse_dga(text: &str) -> Result<ParsedDga, IngestError> {
    let (document, warnings) = parse_dga_document(text)?;
    let dga = document.to_dga().map_err(|e| IngestError {
        line: 1,
        column: 1,
        kind: IngestErrorKind::Syntax(e.to_string()),
    })?;
    Ok(ParsedDga {
        dga,
        document,
        warnings,
    })
}

pub fn parse_dga_bytes(bytes: &[u8]) -> Result<ParsedDga, IngestError> {
    parse_dga(decode(bytes)?)
}
