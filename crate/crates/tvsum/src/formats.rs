//! JSON file formats for triangulations, spines and colorings.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tvsum_core::spine::{
    dual_spine, AbstractSpine, Perm4, SpineEdge, SpineError, SpineFace, SpineVertex, Tetrahedron,
    Triangulation,
};
use tvsum_core::surfaces::Coloring;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Spine(#[from] SpineError),
    #[error("tetrahedron {tet} face {face}: gluing {images:?} is not a permutation")]
    BadPermutation { tet: usize, face: usize, images: [u8; 4] },
    #[error("input has neither \"tetrahedra\" nor \"vertices\"")]
    UnknownDocument,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangulationDoc {
    tetrahedra: Vec<TetDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TetDoc {
    neighbors: [usize; 4],
    gluings: [[u8; 4]; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpineDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    faces: Vec<FaceDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    faces: [usize; 6],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    faces: [usize; 3],
    chi: u8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceDoc {
    chi: u8,
    forced: Option<u32>,
}

pub fn parse_triangulation(json: &str) -> Result<Triangulation, FormatError> {
    let doc: TriangulationDoc = serde_json::from_str(json)?;
    triangulation_from_doc(doc)
}

fn triangulation_from_doc(doc: TriangulationDoc) -> Result<Triangulation, FormatError> {
    let mut tets = Vec::with_capacity(doc.tetrahedra.len());
    for (tet, t) in doc.tetrahedra.into_iter().enumerate() {
        let mut gluings = [Perm4::IDENTITY; 4];
        for (face, images) in t.gluings.into_iter().enumerate() {
            gluings[face] = Perm4::new(images).ok_or(FormatError::BadPermutation { tet, face, images })?;
        }
        tets.push(Tetrahedron { neighbors: t.neighbors, gluings });
    }
    Ok(Triangulation::new(tets)?)
}

pub fn triangulation_to_json(tri: &Triangulation) -> String {
    let doc = TriangulationDoc {
        tetrahedra: tri
            .tetrahedra()
            .iter()
            .map(|t| TetDoc { neighbors: t.neighbors, gluings: t.gluings.map(|g| g.images()) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn parse_spine(json: &str) -> Result<AbstractSpine, FormatError> {
    let doc: SpineDoc = serde_json::from_str(json)?;
    spine_from_doc(doc)
}

fn spine_from_doc(doc: SpineDoc) -> Result<AbstractSpine, FormatError> {
    let vertices = doc.vertices.into_iter().map(|v| SpineVertex { faces: v.faces }).collect();
    let edges = doc.edges.into_iter().map(|e| SpineEdge { faces: e.faces, chi: e.chi }).collect();
    let faces = doc.faces.into_iter().map(|f| SpineFace { chi: f.chi, forced: f.forced }).collect();
    Ok(AbstractSpine::new(vertices, edges, faces)?)
}

pub fn spine_to_json(spine: &AbstractSpine) -> String {
    let doc = SpineDoc {
        vertices: spine.vertices().iter().map(|v| VertexDoc { faces: v.faces }).collect(),
        edges: spine.edges().iter().map(|e| EdgeDoc { faces: e.faces, chi: e.chi }).collect(),
        faces: spine.faces().iter().map(|f| FaceDoc { chi: f.chi, forced: f.forced }).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Where a spine came from; triangulation inputs keep their gluing data.
#[derive(Clone, Debug)]
pub enum Input {
    Triangulation(Triangulation),
    Spine(AbstractSpine),
}

impl Input {
    /// The dual spine for triangulations, the spine itself otherwise.
    pub fn spine(&self) -> AbstractSpine {
        match self {
            Input::Triangulation(t) => dual_spine(t),
            Input::Spine(s) => s.clone(),
        }
    }

    pub fn triangulation(&self) -> Option<&Triangulation> {
        match self {
            Input::Triangulation(t) => Some(t),
            Input::Spine(_) => None,
        }
    }
}

/// Accepts either document kind, told apart by its top-level keys.
pub fn parse_input(json: &str) -> Result<Input, FormatError> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    let has = |k: &str| value.get(k).is_some();
    if has("tetrahedra") {
        Ok(Input::Triangulation(triangulation_from_doc(serde_json::from_value(value)?)?))
    } else if has("vertices") {
        Ok(Input::Spine(spine_from_doc(serde_json::from_value(value)?)?))
    } else {
        Err(FormatError::UnknownDocument)
    }
}

pub fn load_input(path: &Path) -> Result<Input, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_input(&text)
}

pub fn parse_coloring(json: &str) -> Result<Coloring, FormatError> {
    let colors: Vec<u32> = serde_json::from_str(json)?;
    Ok(Coloring::new(colors))
}

pub fn coloring_to_json(c: &Coloring) -> String {
    serde_json::to_string(c.colors()).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tvsum_core::census;

    #[test]
    fn triangulation_round_trip() {
        for tri in [census::figure_eight(), census::one_tet_two_edges(), census::two_tet_one_edge()] {
            let back = parse_triangulation(&triangulation_to_json(&tri)).unwrap();
            assert_eq!(back, tri);
        }
    }

    #[test]
    fn spine_round_trip() {
        let s = census::augmented_example();
        assert_eq!(parse_spine(&spine_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn detects_document_kind() {
        let tri = census::figure_eight();
        let input = parse_input(&triangulation_to_json(&tri)).unwrap();
        assert_eq!(input.triangulation(), Some(&tri));
        assert_eq!(input.spine(), dual_spine(&tri));
        assert!(matches!(parse_input("{\"foo\": 1}"), Err(FormatError::UnknownDocument)));
    }

    #[test]
    fn rejects_bad_gluing() {
        let json = r#"{"tetrahedra":[{"neighbors":[0,0,0,0],"gluings":[[0,0,1,2],[0,1,2,3],[0,1,2,3],[0,1,2,3]]}]}"#;
        assert!(matches!(parse_triangulation(json), Err(FormatError::BadPermutation { face: 0, .. })));
    }

    #[test]
    fn coloring_is_a_plain_array() {
        let c = parse_coloring("[2, 4, 0]").unwrap();
        assert_eq!(c.colors(), &[2, 4, 0]);
        assert_eq!(coloring_to_json(&c), "[2,4,0]");
    }
}
