//! Plain-text tables and DOT labels.

use sha2::{Digest, Sha256};
use strata_core::{
    Classification, ComponentSummary, EnhancedLevelGraph, RamificationProfile, StratumSignature, TwoLevelDatum,
};

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

const COMPONENT_HEADER: [&str; 5] = ["id", "kind", "rotation/spin", "profile", "#data"];

/// One row per predicted component; the data column is empty since nothing is enumerated.
pub fn classification_table(c: &Classification) -> String {
    let mut rows = Vec::new();
    for p in &c.hyperelliptic {
        rows.push(vec![rows.len().to_string(), "hyperelliptic".into(), "-".into(), p.to_string(), "-".into()]);
    }
    for group in &c.non_hyperelliptic {
        let invariant = match (group.rotation, group.spin) {
            (Some(r), _) => format!("r={r}"),
            (None, Some(s)) => format!("spin={s}"),
            (None, None) => "-".into(),
        };
        for _ in 0..group.count {
            rows.push(vec![
                rows.len().to_string(),
                "non-hyperelliptic".into(),
                invariant.clone(),
                "-".into(),
                "-".into(),
            ]);
        }
    }
    table(&COMPONENT_HEADER, &rows)
}

pub fn component_table(components: &[ComponentSummary]) -> String {
    let rows: Vec<Vec<String>> = components
        .iter()
        .map(|c| {
            let profile = match (&c.profile, c.profile_unresolved) {
                (Some(p), _) => p.to_string(),
                (None, true) => "unresolved".into(),
                (None, false) => "-".into(),
            };
            vec![c.id.to_string(), c.kind().into(), format!("r={}", c.rotation), profile, c.data_count.to_string()]
        })
        .collect();
    table(&COMPONENT_HEADER, &rows)
}

pub fn datum_table(data: &[TwoLevelDatum]) -> String {
    let rows: Vec<Vec<String>> = data
        .iter()
        .enumerate()
        .map(|(i, x)| vec![i.to_string(), x.to_string(), format!("r={}", x.rotation_number())])
        .collect();
    table(&["index", "datum", "rotation"], &rows)
}

pub fn profile_table(sig: &StratumSignature, profiles: &[RamificationProfile]) -> String {
    let rows: Vec<Vec<String>> = profiles
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let fixed: Vec<String> =
                p.fixed_poles().iter().map(|&j| format!("p{}:-{}", j + 1, sig.pole_orders()[j])).collect();
            vec![i.to_string(), p.to_string(), if fixed.is_empty() { "-".into() } else { fixed.join(" ") }]
        })
        .collect();
    table(&["id", "pole involution", "fixed poles"], &rows)
}

pub fn level_graph_table(g: &EnhancedLevelGraph) -> String {
    let rows: Vec<Vec<String>> = g
        .vertices
        .iter()
        .map(|v| {
            let zeros: Vec<String> = v.zeros.iter().map(|z| format!("z{}:{}", z.label + 1, z.order)).collect();
            let poles: Vec<String> = v.poles.iter().map(|p| format!("p{}:-{}", p.label + 1, p.order)).collect();
            let or_dash = |items: Vec<String>| if items.is_empty() { "-".to_string() } else { items.join(" ") };
            vec![v.name.clone(), v.level.to_string(), v.genus.to_string(), or_dash(zeros), or_dash(poles)]
        })
        .collect();
    table(&["vertex", "level", "genus", "zeros", "poles"], &rows)
}

/// First eight hex digits of the SHA-256 of the datum's JSON form.
pub fn short_hash_label(x: &TwoLevelDatum) -> String {
    let text = serde_json::to_string(&x.to_json()).expect("datum JSON is always serializable");
    hex::encode(&Sha256::digest(text.as_bytes())[..4])
}
