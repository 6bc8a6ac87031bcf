//! The full construction from a plane Laman graph to an L-contact
//! representation, with per-stage timings.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::angular::{
    check_angular_structure, compute_angular_tree, derive_matching, AngularMatching,
    AngularStructure, StructureVerdict,
};
use crate::graph::PlaneGraph;
use crate::henneberg::{decompose, HennebergSequence};
use crate::labeling::{
    angle_labeling_from_structure, check_angle_labeling, edge_labeling_from_angular_tree,
    verify_edge_labeling, AngleLabeling, EdgeLabeling, EdgeLabelingReport,
};
use crate::laman::{validate_laman, LamanVerdict};
use crate::lcontact::{
    assign_coordinates, assign_types, build_inequality_graphs, check_coordinates, check_face_paths,
    check_sink_edges, check_types, emit_lshapes, validate_representation, Coordinates,
    InequalityGraph, LContactRepresentation, ReprViolation, VertexTypes,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("graph is not Laman")]
    NotLaman(LamanVerdict),
    #[error("unsupported embedding: {0}")]
    Embedding(String),
    #[error("internal invariant violated in {stage}: {detail}")]
    Internal { stage: Stage, detail: String },
}

fn internal(stage: Stage) -> impl Fn(String) -> PipelineError {
    move |detail| PipelineError::Internal { stage, detail }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stage {
    Henneberg,
    AngularTree,
    AngleLabeling,
    EdgeLabeling,
    Matching,
    Types,
    Dr,
    Db,
    Coords,
    Shapes,
}

impl Stage {
    pub const DUMPABLE: [Stage; 8] = [
        Stage::Henneberg,
        Stage::AngularTree,
        Stage::AngleLabeling,
        Stage::EdgeLabeling,
        Stage::Types,
        Stage::Dr,
        Stage::Db,
        Stage::Coords,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Henneberg => "henneberg",
            Stage::AngularTree => "angular-tree",
            Stage::AngleLabeling => "angle-labeling",
            Stage::EdgeLabeling => "edge-labeling",
            Stage::Matching => "matching",
            Stage::Types => "types",
            Stage::Dr => "dr",
            Stage::Db => "db",
            Stage::Coords => "coords",
            Stage::Shapes => "shapes",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::DUMPABLE
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Stage::DUMPABLE.iter().map(|s| s.name()).collect();
                format!("unknown stage {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone)]
pub struct PipelineArtifacts {
    pub graph: PlaneGraph,
    pub sequence: HennebergSequence,
    pub tree: AngularStructure,
    pub angle_labeling: AngleLabeling,
    pub edge_labeling: EdgeLabeling,
    pub report: EdgeLabelingReport,
    pub matching: AngularMatching,
    pub types: VertexTypes,
    pub dr: InequalityGraph,
    pub db: InequalityGraph,
    pub coords: Coordinates,
    pub representation: LContactRepresentation,
    pub seed: Option<u64>,
    /// Wall-clock milliseconds per stage, in pipeline order.
    pub timings: Vec<(Stage, f64)>,
}

struct Timer {
    last: Instant,
    timings: Vec<(Stage, f64)>,
}

impl Timer {
    fn lap(&mut self, stage: Stage) {
        let now = Instant::now();
        let ms = (now - self.last).as_secs_f64() * 1e3;
        self.timings.push((stage, ms));
        self.last = now;
    }
}

/// Runs every stage. Laman and embedding preconditions are checked first.
pub fn run(g: &PlaneGraph) -> Result<PipelineArtifacts, PipelineError> {
    let verdict = validate_laman(g);
    if !verdict.is_accepted() {
        return Err(PipelineError::NotLaman(verdict));
    }
    if !g.is_two_connected() {
        return Err(PipelineError::Embedding("graph is not 2-connected".into()));
    }
    let mut timer = Timer {
        last: Instant::now(),
        timings: Vec::new(),
    };
    let sequence = decompose(g).map_err(|e| internal(Stage::Henneberg)(e.to_string()))?;
    timer.lap(Stage::Henneberg);
    run_from_sequence(g, sequence, timer)
}

/// Runs every stage after the Henneberg decomposition, using `sequence`.
pub fn run_with_sequence(
    g: &PlaneGraph,
    sequence: HennebergSequence,
) -> Result<PipelineArtifacts, PipelineError> {
    let timer = Timer {
        last: Instant::now(),
        timings: Vec::new(),
    };
    run_from_sequence(g, sequence, timer)
}

fn run_from_sequence(
    g: &PlaneGraph,
    sequence: HennebergSequence,
    mut timer: Timer,
) -> Result<PipelineArtifacts, PipelineError> {
    let err = |s: Stage| internal(s);
    let tree =
        compute_angular_tree(g, &sequence).map_err(|e| err(Stage::AngularTree)(e.to_string()))?;
    timer.lap(Stage::AngularTree);
    let angle_labeling = angle_labeling_from_structure(g, &tree)
        .map_err(|e| err(Stage::AngleLabeling)(e.to_string()))?;
    timer.lap(Stage::AngleLabeling);
    let edge_labeling = edge_labeling_from_angular_tree(g, &tree)
        .map_err(|e| err(Stage::EdgeLabeling)(e.to_string()))?;
    let report = verify_edge_labeling(g, &edge_labeling)
        .map_err(|v| err(Stage::EdgeLabeling)(format!("{v:?}")))?;
    timer.lap(Stage::EdgeLabeling);
    let matching = derive_matching(g, &tree).map_err(|e| err(Stage::Matching)(e.to_string()))?;
    timer.lap(Stage::Matching);
    let types =
        assign_types(g, &edge_labeling, &matching).map_err(|e| err(Stage::Types)(e.to_string()))?;
    timer.lap(Stage::Types);
    let (dr, db) = build_inequality_graphs(g, &edge_labeling, &report, &matching, &types)
        .map_err(|e| err(Stage::Dr)(e.to_string()))?;
    timer.lap(Stage::Dr);
    let coords = assign_coordinates(g, &dr, &db).map_err(|e| err(Stage::Coords)(e.to_string()))?;
    timer.lap(Stage::Coords);
    let representation = emit_lshapes(g, &edge_labeling, &types, &coords);
    timer.lap(Stage::Shapes);
    Ok(PipelineArtifacts {
        graph: g.clone(),
        sequence,
        tree,
        angle_labeling,
        edge_labeling,
        report,
        matching,
        types,
        dr,
        db,
        coords,
        representation,
        seed: None,
        timings: timer.timings,
    })
}

impl PipelineArtifacts {
    /// Re-checks every intermediate structure with its verifier.
    pub fn audit(&self) -> Result<(), String> {
        let g = &self.graph;
        if check_angular_structure(g, &self.tree) != StructureVerdict::ValidTree {
            return Err("angular structure is not a tree".into());
        }
        check_angle_labeling(g, &self.angle_labeling).map_err(|v| format!("{v:?}"))?;
        verify_edge_labeling(g, &self.edge_labeling).map_err(|v| format!("{v:?}"))?;
        check_types(
            g,
            &self.edge_labeling,
            &self.report,
            &self.matching,
            &self.types,
        )?;
        check_face_paths(
            g,
            &self.report,
            &self.matching,
            &self.types,
            &self.dr,
            &self.db,
        )?;
        check_sink_edges(
            g,
            &self.edge_labeling,
            &self.report,
            &self.types,
            &self.dr,
            &self.db,
        )?;
        check_coordinates(g, &self.coords, &self.dr, &self.db)?;
        self.validate().map_err(|v| format!("{v:?}"))
    }

    pub fn validate(&self) -> Result<(), ReprViolation> {
        validate_representation(&self.graph, &self.representation)
    }

    pub fn stage_json(&self, stage: Stage) -> Value {
        let g = &self.graph;
        match stage {
            Stage::Henneberg => json!(self.sequence),
            Stage::AngularTree => json!(self.tree.to_json(g)),
            Stage::AngleLabeling => json!(self.angle_labeling.to_json(g)),
            Stage::EdgeLabeling => json!(self.edge_labeling),
            Stage::Matching => json!(self.matching.face_to_vertex),
            Stage::Types => json!(self.types.to_json(g)),
            Stage::Dr => json!(self.dr),
            Stage::Db => json!(self.db),
            Stage::Coords => {
                let xy: Vec<Value> = g
                    .vertices()
                    .map(|v| json!({"v": v, "x": self.coords.x[v], "y": self.coords.y[v]}))
                    .collect();
                json!(xy)
            }
            Stage::Shapes => json!(self.representation),
        }
    }

    /// Every stage plus provenance metadata. Timings are left out unless
    /// asked for, so that bundles are reproducible byte for byte.
    pub fn bundle_json(&self, with_timings: bool) -> Value {
        let mut stages = serde_json::Map::new();
        stages.insert("graph".into(), json!(self.graph.to_json()));
        for s in Stage::DUMPABLE.into_iter().chain([Stage::Matching]) {
            stages.insert(s.name().into(), self.stage_json(s));
        }
        stages.insert("representation".into(), json!(self.representation));
        let mut meta = json!({"seed": self.seed});
        if with_timings {
            let timings: serde_json::Map<String, Value> = self
                .timings
                .iter()
                .map(|(s, ms)| (s.name().to_string(), json!(ms)))
                .collect();
            meta["timings_ms"] = Value::Object(timings);
        }
        stages.insert("meta".into(), meta);
        Value::Object(stages)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::henneberg::generate;

    #[test]
    fn runs_on_small_graphs() {
        for g in [k3(), k3_plus(), generate(20, 3)] {
            let a = run(&g).unwrap();
            a.audit().unwrap();
            assert_eq!(a.timings.len(), 9);
        }
    }

    #[test]
    fn k4_is_rejected() {
        assert!(matches!(run(&k4()), Err(PipelineError::NotLaman(_))));
    }

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::DUMPABLE {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!("flips".parse::<Stage>().is_err());
    }

    #[test]
    fn deterministic_bundle() {
        let g = generate(15, 9);
        let a = run(&g).unwrap().stage_json(Stage::Coords);
        let b = run(&g).unwrap().stage_json(Stage::Coords);
        assert_eq!(a, b);
    }
}
