use serde::Serialize;

use rtdim::bounds::{BoundReport, Construction};
use rtdim::explore::{is_intersection_closed, is_maximal_class};
use rtdim::measures::{
    pattern_profile, recursive_teaching_plan, teaching_dimensions, vc_dimension, PatternProfile,
    TeachingSet,
};
use rtdim::{ConceptClass, Result};

/// Profile depth used when `--profile-max` is not given.
pub const DEFAULT_PROFILE_MAX: usize = 8;

#[derive(Debug, Serialize)]
pub struct ConceptTd {
    pub concept: String,
    pub td: usize,
}

#[derive(Debug, Serialize)]
pub struct LevelReport {
    pub td: usize,
    pub concepts: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub size: usize,
    pub vcd: usize,
    pub td: Vec<ConceptTd>,
    pub td_min: usize,
    pub td_max: usize,
    pub rtd: usize,
    pub plan: Vec<LevelReport>,
    pub profile: PatternProfile,
    pub maximal: bool,
    pub intersection_closed: bool,
}

pub fn analyze(class: &ConceptClass, profile_max: Option<usize>) -> Result<AnalysisReport> {
    let n = class.n();
    let tds = teaching_dimensions(class)?;
    let plan = recursive_teaching_plan(class)?;
    let td: Vec<ConceptTd> = class
        .iter()
        .zip(&tds)
        .map(|(c, &td)| ConceptTd {
            concept: c.render(n),
            td,
        })
        .collect();
    Ok(AnalysisReport {
        n,
        size: class.len(),
        vcd: vc_dimension(class)?,
        td_min: tds.iter().copied().min().unwrap_or(0),
        td_max: tds.iter().copied().max().unwrap_or(0),
        td,
        rtd: plan.rtd,
        plan: plan
            .levels
            .iter()
            .map(|l| LevelReport {
                td: l.td,
                concepts: l.removed.iter().map(|c| c.render(n)).collect(),
            })
            .collect(),
        profile: pattern_profile(class, profile_max.unwrap_or(DEFAULT_PROFILE_MAX.min(n)))?,
        maximal: is_maximal_class(class),
        intersection_closed: is_intersection_closed(class),
    })
}

#[derive(Debug, Serialize)]
pub struct ConstructionReport<'a> {
    pub concept: String,
    pub teaching_set: &'a TeachingSet,
    pub trace: &'a BoundReport,
}

pub fn construction(out: &Construction, n: usize) -> ConstructionReport<'_> {
    ConstructionReport {
        concept: out.concept.render(n),
        teaching_set: &out.teaching_set,
        trace: &out.trace,
    }
}
