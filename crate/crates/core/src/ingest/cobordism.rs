//! Cobordism maps. Source chords carry the `src.` prefix and target chords
//! the `tgt.` prefix, so the two ends may share names:
//!
//! ```text
//! source upper.dga
//! target lower.dga
//! disk src.a -> tgt.a tgt.b sign -1
//! ```
//!
//! Either end may instead be given inline with prefixed directives such as
//! `src.chord a 1`. Source chords without records map to zero.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{
    parse_disk, serialize_prefixed, sort_records, syntax, tokenize, write_record, DgaBuilder, DgaDocument,
    DimensionWarning, DiskRecord, IngestError, IngestErrorKind, Token,
};
use crate::dga::{Dga, DgaMorphism, Element, Ring};

pub const SOURCE_PREFIX: &str = "src.";
pub const TARGET_PREFIX: &str = "tgt.";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgaSource {
    /// As written in the file; relative paths are resolved by the caller.
    Path(String),
    Inline(DgaDocument),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismDocument {
    pub source: Option<DgaSource>,
    pub target: Option<DgaSource>,
    /// Chord names without prefixes.
    pub records: Vec<DiskRecord>,
}

struct Located {
    line: usize,
    positive: (usize, usize),
    word: Vec<(usize, usize)>,
}

fn strip<'a>(tok: &Token<'a>, prefix: &'static str) -> Result<&'a str, IngestError> {
    tok.text
        .strip_prefix(prefix)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| IngestError::at(tok, IngestErrorKind::Namespace(tok.text.into(), prefix)))
}

fn rest_of_line(text: &str, toks: &[Token]) -> Result<String, IngestError> {
    if toks.len() < 2 {
        return Err(syntax(toks, format!("expected `{} <path>`", toks[0].text)));
    }
    let line = text.split('\n').nth(toks[0].line - 1).unwrap_or("");
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.split('#').next().unwrap_or("");
    let start: usize = line
        .char_indices()
        .nth(toks[1].column - 1)
        .map(|(b, _)| b)
        .unwrap_or(line.len());
    Ok(line[start..].trim_end().to_string())
}

fn parse_located(text: &str) -> Result<(CobordismDocument, Vec<Located>), IngestError> {
    let mut source: Option<DgaSource> = None;
    let mut target: Option<DgaSource> = None;
    let mut src_inline = DgaBuilder::default();
    let mut tgt_inline = DgaBuilder::default();
    let (mut has_src, mut has_tgt) = (false, false);
    let mut records = Vec::new();
    let mut spans = Vec::new();
    let lines = tokenize(text);
    for toks in &lines {
        let head = toks[0].text;
        if let Some(d) = head.strip_prefix(SOURCE_PREFIX) {
            has_src = true;
            src_inline.line(d, toks)?;
            continue;
        }
        if let Some(d) = head.strip_prefix(TARGET_PREFIX) {
            has_tgt = true;
            tgt_inline.line(d, toks)?;
            continue;
        }
        match head {
            "source" | "target" => {
                let slot = if head == "source" { &mut source } else { &mut target };
                if slot.is_some() {
                    return Err(IngestError::at(
                        &toks[0],
                        IngestErrorKind::Syntax(format!("{head} given twice")),
                    ));
                }
                *slot = Some(DgaSource::Path(rest_of_line(text, toks)?));
            }
            "disk" => {
                let d = parse_disk(toks)?;
                let positive = strip(&d.positive, SOURCE_PREFIX)?.to_string();
                let word = d
                    .word
                    .iter()
                    .map(|t| strip(t, TARGET_PREFIX).map(str::to_string))
                    .collect::<Result<_, _>>()?;
                spans.push(Located {
                    line: d.positive.line,
                    positive: (d.positive.line, d.positive.column),
                    word: d.word.iter().map(|t| (t.line, t.column)).collect(),
                });
                records.push(DiskRecord {
                    positive,
                    word,
                    count: d.count,
                });
            }
            other => {
                return Err(IngestError::at(
                    &toks[0],
                    IngestErrorKind::UnknownDirective(other.into()),
                ));
            }
        }
    }
    let inline = |has: bool, b: DgaBuilder, slot: &mut Option<DgaSource>, first: Option<&Vec<Token>>| {
        if !has {
            return Ok(());
        }
        if slot.is_some() {
            let t = first.expect("inline lines exist");
            return Err(IngestError::at(
                &t[0],
                IngestErrorKind::Syntax("end given both as a path and inline".into()),
            ));
        }
        *slot = Some(DgaSource::Inline(b.finish()?.0));
        Ok(())
    };
    let first_src = lines.iter().find(|t| t[0].text.starts_with(SOURCE_PREFIX));
    let first_tgt = lines.iter().find(|t| t[0].text.starts_with(TARGET_PREFIX));
    inline(has_src, src_inline, &mut source, first_src)?;
    inline(has_tgt, tgt_inline, &mut target, first_tgt)?;
    Ok((
        CobordismDocument {
            source,
            target,
            records,
        },
        spans,
    ))
}

pub fn parse_cobordism_document(text: &str) -> Result<CobordismDocument, IngestError> {
    Ok(parse_located(text)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedMorphism {
    pub morphism: DgaMorphism,
    pub document: CobordismDocument,
    pub warnings: Vec<DimensionWarning>,
}

/// Builds `Φ(a) = Σ counts·words` between the given ends. Over a `Z2` target
/// the images are reduced into `{0, 1}`.
pub fn parse_cobordism(text: &str, source: &Arc<Dga>, target: &Arc<Dga>) -> Result<ParsedMorphism, IngestError> {
    let (document, spans) = parse_located(text)?;
    let mut images = vec![Element::zero(); source.len()];
    let mut warnings = Vec::new();
    let undefined = |(line, column): (usize, usize), name: &str| IngestError {
        line,
        column,
        kind: IngestErrorKind::UndefinedChord(name.into()),
    };
    for (r, s) in document.records.iter().zip(&spans) {
        let a = source.id(&r.positive).map_err(|_| undefined(s.positive, &r.positive))?;
        let mut word = Vec::with_capacity(r.word.len());
        for (x, at) in r.word.iter().zip(&s.word) {
            word.push(target.id(x).map_err(|_| undefined(*at, x))?);
        }
        let expected = source.grading(a);
        let found = target.word_grading(&word);
        if found != expected {
            warnings.push(DimensionWarning {
                line: s.line,
                chord: r.positive.clone(),
                word: r.word.clone(),
                expected,
                found,
            });
        }
        images[a].add_term(word, r.count.clone());
    }
    if target.ring() == Ring::Z2 {
        for e in &mut images {
            *e = e.mod2();
        }
    }
    let morphism = DgaMorphism::new(source.clone(), target.clone(), images).map_err(|e| IngestError {
        line: 1,
        column: 1,
        kind: IngestErrorKind::Syntax(e.to_string()),
    })?;
    Ok(ParsedMorphism {
        morphism,
        document,
        warnings,
    })
}

fn morphism_records(phi: &DgaMorphism) -> Vec<DiskRecord> {
    let (s, t) = (phi.source(), phi.target());
    let mut records: Vec<DiskRecord> = (0..s.len())
        .flat_map(|a| {
            phi.image(a)
                .terms()
                .map(move |(w, c): (&Vec<usize>, &BigInt)| DiskRecord {
                    positive: s.chord(a).name.clone(),
                    word: w.iter().map(|&x| t.chord(x).name.clone()).collect(),
                    count: c.clone(),
                })
        })
        .collect();
    sort_records(&mut records);
    records
}

/// Disk records only, sorted by source chord and then word.
pub fn serialize_morphism(phi: &DgaMorphism) -> String {
    let mut out = String::new();
    for r in morphism_records(phi) {
        write_record(&mut out, &r, SOURCE_PREFIX, TARGET_PREFIX);
    }
    out
}

/// [`serialize_morphism`] preceded by `source` and `target` lines.
pub fn serialize_morphism_with_paths(phi: &DgaMorphism, source: Option<&str>, target: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = source {
        out.push_str(&format!("source {p}\n"));
    }
    if let Some(p) = target {
        out.push_str(&format!("target {p}\n"));
    }
    out + &serialize_morphism(phi)
}

/// Both ends inline, so the file stands alone.
pub fn serialize_morphism_inline(phi: &DgaMorphism) -> String {
    let mut out = serialize_prefixed(&DgaDocument::from_dga(phi.source()), SOURCE_PREFIX);
    out += &serialize_prefixed(&DgaDocument::from_dga(phi.target()), TARGET_PREFIX);
    out + &serialize_morphism(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_dga;

    fn abc() -> Arc<Dga> {
        Arc::new(
            parse_dga("chord a 1\nchord b 0\nchord c 0\ndisk a -> b c sign 1\n")
                .unwrap()
                .dga,
        )
    }

    #[test]
    fn identity_table() {
        let d = abc();
        let text = "disk src.a -> tgt.a sign 1\ndisk src.b -> tgt.b sign 1\ndisk src.c -> tgt.c sign 1\n";
        let p = parse_cobordism(text, &d, &d).unwrap();
        assert_eq!(p.morphism, DgaMorphism::identity(d.clone()));
        assert!(p.warnings.is_empty());
        assert_eq!(serialize_morphism(&p.morphism), text);
    }

    #[test]
    fn diagonal_table_and_missing_records() {
        let d = abc();
        let p = parse_cobordism("disk src.a -> tgt.a sign -1\n", &d, &d).unwrap();
        assert_eq!(p.morphism.image(0), &Element::monomial(vec![0], BigInt::from(-1)));
        assert!(p.morphism.image(1).is_zero());
    }

    #[test]
    fn prefixes_required() {
        let d = abc();
        let e = parse_cobordism("disk a -> tgt.a sign 1\n", &d, &d).unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        assert_eq!(e.kind, IngestErrorKind::Namespace("a".into(), SOURCE_PREFIX));
        let e = parse_cobordism("disk src.q -> sign 1\n", &d, &d).unwrap_err();
        assert_eq!(e.kind, IngestErrorKind::UndefinedChord("q".into()));
        let e = parse_cobordism("disk src.a -> tgt.a tgt.z sign 1\n", &d, &d).unwrap_err();
        assert_eq!((e.column, e.kind), (21, IngestErrorKind::UndefinedChord("z".into())));
    }

    #[test]
    fn paths_and_inline_ends() {
        let doc = parse_cobordism_document(
            "source dir/upper one.dga  # comment\ntgt.chord a 0\ntgt.disk a -> sign 1\ndisk src.x -> tgt.a sign 2\n",
        )
        .unwrap();
        assert_eq!(doc.source, Some(DgaSource::Path("dir/upper one.dga".into())));
        match &doc.target {
            Some(DgaSource::Inline(t)) => assert_eq!(t.chords.len(), 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(doc.records[0].positive, "x");
        assert!(parse_cobordism_document("source a\nsource b\n").is_err());
        assert!(parse_cobordism_document("target a\ntgt.chord x 1\n").is_err());
    }

    #[test]
    fn grading_warnings() {
        let d = abc();
        let p = parse_cobordism("disk src.b -> tgt.a sign 1\n", &d, &d).unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!((p.warnings[0].expected, p.warnings[0].found), (0, 1));
    }

    #[test]
    fn inline_round_trip() {
        let d = abc();
        let phi = DgaMorphism::identity(d.clone())
            .with_image(0, Element::monomial(vec![0], BigInt::from(-1)))
            .unwrap();
        let text = serialize_morphism_inline(&phi);
        let doc = parse_cobordism_document(&text).unwrap();
        let Some(DgaSource::Inline(s)) = doc.source else {
            panic!()
        };
        let s = Arc::new(s.to_dga().unwrap());
        let back = parse_cobordism(&text, &s, &s).unwrap();
        assert_eq!(serialize_morphism(&back.morphism), serialize_morphism(&phi));
    }
}
