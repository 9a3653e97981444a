use std::io::{self, Write};

use crate::ingest::GroundTruth;
use crate::namegraph::{NameGraph, PairCounts};
use crate::normalize::{NameView, ProfileRecord};
use crate::phonetic::PhoneticAlgorithm;
use crate::strsim::EditDistanceRange;
use crate::suggest::OrderingFunction;
use crate::treegraph::{build_tree, RelationKind};

use super::{report_fields, EvalOptions, EvaluationReport, Method, MethodContext, REPORT_COLUMNS};

/// Axes of the fine-tuning sweep. Every range is `[1, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub relations: Vec<RelationKind>,
    pub ed_his: Vec<u32>,
    pub functions: Vec<OrderingFunction>,
    pub depth: u32,
    pub options: EvalOptions,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            relations: RelationKind::ALL.to_vec(),
            ed_his: vec![2, 3, 4, 5],
            functions: OrderingFunction::ALL.to_vec(),
            depth: 2,
            options: EvalOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub relation: RelationKind,
    pub range: EditDistanceRange,
    pub function: OrderingFunction,
    pub report: EvaluationReport,
}

/// One GRAFT evaluation per (relation, range, function) cell, in axis order.
/// The tree is built once and each relation's pairs are tallied once.
pub fn run_experiment_grid(
    records: &[ProfileRecord],
    view: NameView,
    ground_truth: &GroundTruth,
    spec: &GridSpec,
) -> Vec<GridRow> {
    let tree = build_tree(records, view);
    let mut rows = Vec::new();
    for &relation in &spec.relations {
        let counts = PairCounts::from_tree(&tree, relation);
        for &hi in &spec.ed_his {
            let Ok(range) = EditDistanceRange::new(1, hi.max(1)) else { continue };
            let graph = NameGraph::from_counts(&counts, range).expect("lo is 1").with_origin(view, relation);
            for &function in &spec.functions {
                let ctx = MethodContext { graph: &graph, depth: spec.depth, function, fallback: PhoneticAlgorithm::DoubleMetaphone };
                let report = Method::Graft.evaluate(&ctx, ground_truth, spec.options);
                rows.push(GridRow { relation, range, function, report });
            }
        }
    }
    rows
}

pub fn write_grid_tsv<W: Write>(mut w: W, rows: &[GridRow]) -> io::Result<()> {
    writeln!(w, "relation\trange\tfunction\t{}", REPORT_COLUMNS.join("\t"))?;
    for r in rows {
        writeln!(w, "{}\t{}\t{}\t{}", r.relation, r.range, r.function, report_fields(&r.report))?;
    }
    w.flush()
}
