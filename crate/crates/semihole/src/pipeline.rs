//! Runs the analysis stages in order and collects a [`Report`].

use std::collections::BTreeSet;
use std::time::Instant;

use semihole_core::{Analyzer, Error, FinitenessVerdict, GeneratorMatrix, HoleSet, Pool};

use crate::report::{self, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Hilbert,
    Fundamental,
    Finiteness,
    Holes,
    Saturation,
    Minsets,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Hilbert,
        Stage::Fundamental,
        Stage::Finiteness,
        Stage::Holes,
        Stage::Saturation,
        Stage::Minsets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Hilbert => "hilbert",
            Stage::Fundamental => "fundamental",
            Stage::Finiteness => "finiteness",
            Stage::Holes => "holes",
            Stage::Saturation => "saturation",
            Stage::Minsets => "minsets",
        }
    }

    pub fn parse(s: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|st| st.name() == s)
    }

    /// Stages are linearly ordered and each needs every earlier one.
    fn prerequisites(self) -> impl Iterator<Item = Stage> {
        Stage::ALL.into_iter().filter(move |s| *s < self)
    }
}

/// Closes a stage selection under prerequisites.
pub fn close_stages(stages: impl IntoIterator<Item = Stage>) -> BTreeSet<Stage> {
    let mut out = BTreeSet::new();
    for s in stages {
        out.insert(s);
        out.extend(s.prerequisites());
    }
    out
}

#[derive(Clone, Debug)]
pub struct Request {
    pub matrix: GeneratorMatrix,
    pub stages: BTreeSet<Stage>,
    /// Degree bound for the minimal-set searches of infinite instances.
    pub bound: Option<i64>,
    pub timings: bool,
    /// Also report the Frobenius number (single-row inputs).
    pub frobenius: bool,
}

impl Request {
    pub fn new(matrix: GeneratorMatrix) -> Self {
        Request {
            matrix,
            stages: Stage::ALL.into_iter().collect(),
            bound: None,
            timings: true,
            frobenius: false,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_POINTED: i32 = 2;
pub const EXIT_INFINITE_HOLES: i32 = 3;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

struct Run {
    report: Report,
    timings: bool,
    clock: Instant,
    exit_code: i32,
}

impl Run {
    fn lap(&mut self, stage: &str) {
        if self.timings {
            let ms = self.clock.elapsed().as_millis() as u64;
            self.report.timings_ms.insert(stage.to_string(), ms);
        }
        self.clock = Instant::now();
    }

    fn fail(mut self, code: i32, e: Error) -> Outcome {
        self.report.errors.push(e.to_string());
        Outcome {
            report: self.report,
            exit_code: code,
        }
    }

    fn infinite(&mut self, stage: Stage) {
        self.report
            .errors
            .push(format!("stage {}: {}", stage.name(), Error::InfiniteHoles));
        self.exit_code = EXIT_INFINITE_HOLES;
    }
}

/// Runs the requested stages. A stage that needs finitely many holes on an
/// instance with infinitely many holes sets exit code 3 and the later stages still
/// report what they can.
pub fn run<P: Pool>(req: &Request, pool: &P) -> Outcome {
    let mut run = Run {
        report: Report {
            matrix: (0..req.matrix.dim())
                .map(|i| req.matrix.entries().row(i).to_vec())
                .collect(),
            ..Report::default()
        },
        timings: req.timings,
        clock: Instant::now(),
        exit_code: EXIT_OK,
    };
    let code = |e: &Error| match e {
        Error::NotPointed => EXIT_NOT_POINTED,
        Error::InfiniteHoles => EXIT_INFINITE_HOLES,
        _ => EXIT_ERROR,
    };

    let an = match Analyzer::new(req.matrix.clone(), pool) {
        Ok(an) => an,
        Err(e) => {
            if e == Error::NotPointed {
                run.report.pointed = Some(false);
            }
            return run.fail(code(&e), e);
        }
    };
    run.report.rank = Some(an.lattice().rank);
    run.report.pointed = Some(true);
    run.report.grading = Some(an.profile().grading.clone());
    run.report.extreme_columns = Some(an.profile().extreme_columns.iter().map(|c| c + 1).collect());
    run.lap("cone");

    let want = |s: Stage| req.stages.contains(&s);
    if want(Stage::Hilbert) {
        run.report.hilbert_basis = Some(report::basis_entries(an.hilbert_basis()));
        run.lap("hilbert");
    }
    if !want(Stage::Fundamental) {
        return finish(run);
    }
    let mut holes = match an.fundamental_holes() {
        Ok(h) => HoleSet::undecided(h),
        Err(e) => return run.fail(code(&e), e),
    };
    run.report.fundamental_holes = Some(report::points(&holes.fundamental));
    run.lap("fundamental");

    if !want(Stage::Finiteness) {
        return finish(run);
    }
    if let Err(e) = an.decide_finiteness(&mut holes) {
        return run.fail(code(&e), e);
    }
    run.report.finiteness = Some(report::finiteness(holes.verdict, &holes.witness));
    run.report.shift_table = holes.basis_shifts.as_ref().map(report::shift_table);
    run.lap("finiteness");
    let finite = holes.verdict == FinitenessVerdict::Finite;

    if want(Stage::Holes) {
        if finite {
            if let Err(e) = an.complete_holes(&mut holes) {
                return run.fail(code(&e), e);
            }
            run.report.holes = holes.all.as_deref().map(report::points);
            if req.frobenius && req.matrix.dim() == 1 {
                run.report.frobenius =
                    Some(holes.all.iter().flatten().map(|h| h[0]).max().unwrap_or(-1));
            }
        } else {
            run.infinite(Stage::Holes);
        }
        run.lap("holes");
    }

    let mut sets = None;
    if want(Stage::Minsets) || (want(Stage::Saturation) && finite) {
        match an.saturation_sets(&holes, req.bound) {
            Ok(s) => sets = Some(s),
            Err(e) => return run.fail(code(&e), e),
        }
    }
    if want(Stage::Saturation) {
        match sets.as_ref().and_then(|s| s.non_saturation.as_deref()) {
            Some(sbar) => run.report.non_saturation = Some(report::points(sbar)),
            None => run.infinite(Stage::Saturation),
        }
    }
    if want(Stage::Minsets) {
        if let Some(s) = &sets {
            run.report.min_ss = Some(report::min_set(&s.min_ss));
            run.report.min_sq = Some(report::min_set(&s.min_sq));
            run.report.min_sqsat = Some(report::min_set(&s.min_sqsat));
        }
    }
    if want(Stage::Saturation) || want(Stage::Minsets) {
        run.lap("saturation");
    }

    // the joint verdict needs the hole shifts, which only the holes stage
    // computes for a finite, unsaturated instance
    if !finite || holes.fundamental_shifts.is_some() || holes.is_saturated() {
        match an.joint_verdict(&holes, sets.as_ref()) {
            Ok(j) => run.report.joint_verdict = Some(report::joint(&j)),
            Err(e) => return run.fail(code(&e), e),
        }
    }
    finish(run)
}

fn finish(run: Run) -> Outcome {
    Outcome {
        report: run.report,
        exit_code: run.exit_code,
    }
}
