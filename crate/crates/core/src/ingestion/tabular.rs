//! `incidence-csv` and `intersection-csv`.
//!
//! Both start with a header row of ids. The header may carry a leading
//! corner cell and data rows may lead with their own id; the layout is
//! inferred from row widths.

use csv::ReaderBuilder;

use crate::error::IngestError;
use crate::model::{
    validate_scenario, AlternativeDraft, ConceptDraft, Dim, IntersectionMatrix, ScenarioDraft,
    ScenarioMap,
};

fn records(text: &str) -> Result<Vec<Vec<String>>, IngestError> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Malformed(format!("csv: {e}")))?;
        if record.iter().all(|cell| cell.trim().is_empty()) {
            continue;
        }
        out.push(record.iter().map(str::to_string).collect());
    }
    if out.is_empty() {
        return Err(IngestError::Malformed("empty document".into()));
    }
    Ok(out)
}

/// Splits off the header and checks that all data rows share one width.
/// Header cells, data rows and the line number of the first data row.
type Table = (Vec<String>, Vec<Vec<String>>, usize);

fn header_and_rows(text: &str) -> Result<Table, IngestError> {
    let mut rows = records(text)?;
    let header = rows.remove(0);
    let width = rows.first().map(Vec::len).ok_or_else(|| {
        IngestError::Schema("header row present but no data rows".into())
    })?;
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(IngestError::Schema(format!(
            "data row {} has {} cells, expected {width}",
            i + 1,
            row.len()
        )));
    }
    Ok((header, rows, width))
}

/// Header row of consequence ids, then one row per alternative: its id
/// followed by exactly `0` or `1` per consequence.
pub fn parse_incidence(text: &str) -> Result<ScenarioMap, IngestError> {
    let (header, rows, width) = header_and_rows(text)?;
    let consequence_ids: &[String] = if header.len() == width {
        &header[1..]
    } else if header.len() + 1 == width {
        &header
    } else {
        return Err(IngestError::Schema(format!(
            "header has {} cells but rows have {width}",
            header.len()
        )));
    };

    let mut alternatives = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut consequences = Vec::new();
        for (cell, id) in row[1..].iter().zip(consequence_ids) {
            match cell.as_str() {
                "1" => consequences.push(id.trim().to_string()),
                "0" => {}
                other => {
                    return Err(IngestError::Malformed(format!(
                        "row {} column `{}`: expected 0 or 1, found `{other}`",
                        r + 1,
                        id.trim()
                    )))
                }
            }
        }
        alternatives.push(AlternativeDraft {
            id: row[0].trim().to_string(),
            label: None,
            consequences,
        });
    }

    let draft = ScenarioDraft {
        label: None,
        consequences: consequence_ids
            .iter()
            .map(|id| ConceptDraft {
                id: id.trim().to_string(),
                label: None,
            })
            .collect(),
        alternatives,
    };
    Ok(validate_scenario(&draft)?)
}

/// Header row of hyperedge ids, then the symmetric matrix of face
/// dimensions, one row per hyperedge, optionally led by the row's id.
pub fn parse_intersections(text: &str) -> Result<IntersectionMatrix, IngestError> {
    let (header, rows, width) = header_and_rows(text)?;
    let leading_ids_in_rows = rows.iter().all(|r| r[0].trim().parse::<Dim>().is_err());

    let (ids, labelled): (Vec<String>, bool) = if header.len() == width {
        if leading_ids_in_rows {
            (header[1..].to_vec(), true)
        } else {
            (header.clone(), false)
        }
    } else if header.len() + 1 == width {
        (header.clone(), true)
    } else {
        return Err(IngestError::Schema(format!(
            "header has {} cells but rows have {width}",
            header.len()
        )));
    };
    let ids: Vec<String> = ids.iter().map(|id| id.trim().to_string()).collect();

    if rows.len() != ids.len() {
        return Err(IngestError::Schema(format!(
            "{} hyperedge ids but {} matrix rows",
            ids.len(),
            rows.len()
        )));
    }

    let mut dims = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let cells = if labelled {
            if row[0].trim() != ids[r] {
                return Err(IngestError::Schema(format!(
                    "row {} is labelled `{}` but column {} is `{}`",
                    r + 1,
                    row[0].trim(),
                    r + 1,
                    ids[r]
                )));
            }
            &row[1..]
        } else {
            &row[..]
        };
        let values = cells
            .iter()
            .map(|cell| {
                cell.trim().parse::<Dim>().map_err(|_| {
                    IngestError::Malformed(format!("row {}: `{cell}` is not an integer", r + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        dims.push(values);
    }
    Ok(IntersectionMatrix::new(ids, dims)?)
}
