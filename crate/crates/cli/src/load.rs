use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use lch_core::dga::Dga;
use lch_core::ingest::{self, DgaSource, ParsedDga, ParsedMorphism};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ingest::decode(&bytes)
        .map(str::to_string)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn dga(path: &Path) -> Result<ParsedDga, Failure> {
    let parsed = ingest::parse_dga(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(parsed)
}

/// One end of a cobordism and a label naming it in messages.
pub struct End {
    pub dga: Arc<Dga>,
    pub label: String,
    /// The path as written in the cobordism file, if it was given that way.
    pub written: Option<String>,
}

fn end(which: &str, written: Option<DgaSource>, flag: Option<&Path>, file: &Path) -> Result<End, Failure> {
    if let Some(p) = flag {
        return Ok(End {
            dga: Arc::new(dga(p)?.dga),
            label: p.display().to_string(),
            written: None,
        });
    }
    match written {
        Some(DgaSource::Path(p)) => {
            let resolved: PathBuf = file.parent().unwrap_or(Path::new(".")).join(&p);
            Ok(End {
                dga: Arc::new(dga(&resolved)?.dga),
                label: resolved.display().to_string(),
                written: Some(p),
            })
        }
        Some(DgaSource::Inline(doc)) => Ok(End {
            dga: Arc::new(
                doc.to_dga()
                    .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?,
            ),
            label: format!("inline {which} of {}", file.display()),
            written: None,
        }),
        None => Err(Failure::Input(format!(
            "{}: no {which} given; add a `{which}` line or pass --{which}",
            file.display()
        ))),
    }
}

pub struct Cobordism {
    pub parsed: ParsedMorphism,
    pub source: End,
    pub target: End,
}

pub fn cobordism(file: &Path, source: Option<&Path>, target: Option<&Path>) -> Result<Cobordism, Failure> {
    let text = read(file)?;
    let located = |e: ingest::IngestError| Failure::Input(format!("{}: {e}", file.display()));
    let doc = ingest::parse_cobordism_document(&text).map_err(located)?;
    let source = end("source", doc.source, source, file)?;
    let target = end("target", doc.target, target, file)?;
    let parsed = ingest::parse_cobordism(&text, &source.dga, &target.dga).map_err(located)?;
    Ok(Cobordism { parsed, source, target })
}
