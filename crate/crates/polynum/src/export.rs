//! Serialization of the library's artifacts: polytopes, triangulations,
//! sequences, and decomposition forms. All JSON is built from sorted
//! data, so byte-identical inputs give byte-identical output.

use serde_json::{json, Value};

use crate::decompose::DecompositionForm;
use crate::lattice::Polytope;
use crate::numbers::PolynomialForm;
use crate::rat::Rat;
use crate::shelling::ShellingOrder;
use crate::triangulate::PointedTriangulation;

fn int(v: i128) -> Value {
    json!(i64::try_from(v).expect("value exceeds the JSON integer range"))
}

fn rat_pair(r: &Rat) -> Value {
    json!([
        i64::try_from(*r.numer()).expect("numerator exceeds the JSON integer range"),
        i64::try_from(*r.denom()).expect("denominator exceeds the JSON integer range"),
    ])
}

/// Polytope as JSON: dimension, ambient dimension, vertex coordinates as
/// exact numerator/denominator pairs, and every nonempty face by its
/// sorted vertex ids.
pub fn polytope_json(p: &Polytope) -> Value {
    let vertices: Vec<Value> = p
        .coords
        .iter()
        .map(|v| Value::Array(v.iter().map(rat_pair).collect()))
        .collect();
    let mut faces: Vec<(i32, Vec<u32>)> = p
        .nonempty_face_ids()
        .map(|id| {
            let f = p.face(id);
            (f.dim, f.vertex_ids.clone())
        })
        .collect();
    faces.sort();
    let faces: Vec<Value> = faces
        .into_iter()
        .map(|(dim, ids)| json!({ "dim": dim, "vertex_ids": ids }))
        .collect();
    json!({
        "dim": p.dim,
        "ambient_dim": p.ambient_dim,
        "vertices": vertices,
        "faces": faces,
    })
}

/// Triangulation as JSON: the apex of every nonempty face keyed by face
/// id, the maximal simplexes, and optionally a shelling order with its
/// attachment level counts.
pub fn triangulation_json(t: &PointedTriangulation, sh: Option<&ShellingOrder>) -> Value {
    let mut apexes = serde_json::Map::new();
    for (id, &a) in t.apexes.apex.iter().enumerate() {
        if a != u32::MAX {
            apexes.insert(id.to_string(), json!(a));
        }
    }
    let mut out = json!({
        "apexes": Value::Object(apexes),
        "simplexes": t.simplexes,
    });
    if let Some(sh) = sh {
        out["shelling"] = json!({
            "order": sh.order,
            "l_counts": sh.l_counts,
        });
    }
    out
}

/// Sequence values as one space-separated line.
pub fn sequence_plain(values: &[i128]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Sequence in b-file form: one `n value` pair per line, n from 0.
pub fn sequence_bfile(values: &[i128]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(n, v)| format!("{n} {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Sequence as CSV with a header; the interior column is optional.
pub fn sequence_csv(values: &[i128], interior: Option<&[i128]>) -> String {
    let mut lines = Vec::with_capacity(values.len() + 1);
    match interior {
        None => {
            lines.push("n,value".to_string());
            for (n, v) in values.iter().enumerate() {
                lines.push(format!("{n},{v}"));
            }
        }
        Some(inner) => {
            assert_eq!(values.len(), inner.len());
            lines.push("n,value,interior".to_string());
            for (n, (v, i)) in values.iter().zip(inner).enumerate() {
                lines.push(format!("{n},{v},{i}"));
            }
        }
    }
    lines.join("\n")
}

/// Sequence as JSON with the exact interpolating polynomial (ascending
/// coefficients, numerator/denominator pairs). The polynomial matches
/// the sequence for every n >= 1.
pub fn sequence_json(
    name: &str,
    dim: i32,
    values: &[i128],
    polynomial: &PolynomialForm,
    interior: Option<&[i128]>,
) -> Value {
    let mut out = json!({
        "name": name,
        "dim": dim,
        "values": values.iter().map(|&v| int(v)).collect::<Vec<_>>(),
        "polynomial": polynomial.coeffs.iter().map(rat_pair).collect::<Vec<_>>(),
    });
    if let Some(inner) = interior {
        out["interior_values"] = Value::Array(inner.iter().map(|&v| int(v)).collect());
    }
    out
}

/// Decomposition form as JSON: the theorem tag, the coefficient vector,
/// a rendering of the shift rule, the explicit terms, and the n range on
/// which the form was verified against the sequence.
pub fn form_json(form: &DecompositionForm, verified_range: u32) -> Value {
    json!({
        "theorem": form.theorem.to_string(),
        "dim": form.dim,
        "coeffs": form.coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>(),
        "shift_rule": form.shift_rule(),
        "terms": form
            .terms
            .iter()
            .map(|t| json!({ "dim": t.dim, "shift": t.shift, "coeff": int(t.coeff) }))
            .collect::<Vec<_>>(),
        "verified_range": verified_range,
    })
}
