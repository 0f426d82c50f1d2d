//! Augmentation files: one `aug <chord> <value>` per line. Chords not listed
//! map to zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{parse_int, syntax, tokenize, IngestError, IngestErrorKind};
use crate::dga::{Augmentation, Dga};

pub fn parse_augmentation(text: &str, dga: &Dga) -> Result<Augmentation, IngestError> {
    let mut values = BTreeMap::new();
    for toks in tokenize(text) {
        if toks[0].text != "aug" {
            return Err(IngestError::at(
                &toks[0],
                IngestErrorKind::UnknownDirective(toks[0].text.into()),
            ));
        }
        if toks.len() != 3 {
            return Err(syntax(&toks, "expected `aug <chord> <value>`"));
        }
        let id = dga
            .id(toks[1].text)
            .map_err(|_| IngestError::at(&toks[1], IngestErrorKind::UndefinedChord(toks[1].text.into())))?;
        let v: BigInt = parse_int(&toks[2], IngestErrorKind::BadValue)?;
        if !v.is_zero() && dga.grading(id) != 0 {
            return Err(IngestError::at(
                &toks[2],
                IngestErrorKind::OffDegree {
                    chord: toks[1].text.into(),
                    grading: dga.grading(id),
                },
            ));
        }
        if values.insert(id, v).is_some() {
            return Err(IngestError::at(
                &toks[1],
                IngestErrorKind::DuplicateChord(toks[1].text.into()),
            ));
        }
    }
    Ok(Augmentation::new(dga, values).expect("support checked above"))
}

/// Nonzero values, by chord name.
pub fn serialize_augmentation(aug: &Augmentation, dga: &Dga) -> String {
    let mut lines: Vec<(String, &BigInt)> = aug
        .values()
        .iter()
        .map(|(&id, v)| (dga.chord(id).name.clone(), v))
        .collect();
    lines.sort();
    lines.into_iter().map(|(n, v)| format!("aug {n} {v}\n")).collect()
}
