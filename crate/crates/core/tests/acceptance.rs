//! One line per acceptance criterion. Exits non-zero if any criterion
//! fails its property or its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use arbor::envelope::{LiftWindow, SliceConfig, SliceMode};
use arbor::operad::{self, Operad};
use arbor::segal::Window;
use arbor::suites::{self, SuiteReport};

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> SuiteReport,
}

fn factorization() -> SuiteReport {
    let mut r = SuiteReport::new("factorization");
    r.absorb(suites::gamma_factorization(4));
    r.absorb(suites::forest_factorization(2, 3));
    r
}

fn fixtures(names: &[&str]) -> Vec<Operad> {
    names.iter().map(|n| operad::fixture(n).expect("fixture")).collect()
}

fn adjunction() -> SuiteReport {
    let config = SliceConfig::default().with_cap(2);
    let operads = fixtures(&["com", "free-monoid"]);
    let mut r = suites::adjunction_suite(&operads, Window::new(1, 2), config);
    let iso = suites::adjunction_suite(&operads, Window::new(1, 2), SliceConfig { mode: SliceMode::Iso, ..config });
    r.note(format!("informational, iso-only slice: {}", if iso.passed { "triangles hold" } else { "triangles fail" }));
    r
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "inert/active maps between <n> and <1>, n <= 6",
        budget: Duration::from_secs(1),
        run: || suites::inert_active_counts(6),
    },
    Criterion {
        id: 2,
        title: "inert-active factorization system (Gamma^op <= 4; forests h <= 2, w <= 3)",
        budget: Duration::from_secs(60),
        run: factorization,
    },
    Criterion {
        id: 3,
        title: "|Aut(c_n)| = n! for n <= 4",
        budget: Duration::from_secs(10),
        run: || suites::corolla_automorphisms(4),
    },
    Criterion {
        id: 4,
        title: "tree classes match the level-tree oracle (h <= 3, w <= 4)",
        budget: Duration::from_secs(60),
        run: || suites::tree_oracle(3, 4),
    },
    Criterion {
        id: 5,
        title: "underlying pointed maps preserve inert and active maps",
        budget: Duration::from_secs(30),
        run: || suites::pattern_preservation(4, 2, 3),
    },
    Criterion {
        id: 6,
        title: "Segal checker: fixtures pass, single-point corruptions fail (h <= 2, w <= 3)",
        budget: Duration::from_secs(120),
        run: || suites::segal_suite(Window::new(2, 3)),
    },
    Criterion {
        id: 7,
        title: "envelope: corolla formula, inner limit, Env(Com)(eta) at cap 3",
        budget: Duration::from_secs(120),
        run: || suites::envelope_suite(SliceConfig::default(), 4),
    },
    Criterion {
        id: 8,
        title: "envelope of Com and Ass nerves is Segal (h <= 2, w <= 2, cap 3)",
        budget: Duration::from_secs(120),
        run: || suites::envelope_segal_suite(&fixtures(&["com", "ass"]), Window::new(2, 2), SliceConfig::default()),
    },
    Criterion {
        id: 9,
        title: "cocartesian lifts on Com (3 groups, 3 letters) and their composites",
        budget: Duration::from_secs(60),
        run: || {
            suites::lift_suite(
                LiftWindow { max_groups: 3, max_letters: 3 },
                LiftWindow { max_groups: 3, max_letters: 4 },
            )
        },
    },
    Criterion {
        id: 10,
        title: "adjunction triangle identities on Com and free-monoid",
        budget: Duration::from_secs(30),
        run: adjunction,
    },
];

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_none_or(|id| id == c.id)) {
        let start = Instant::now();
        let report = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = report.passed && in_time;
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {} {} [{} checks, {:.1?} of {:?}]",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            report.checked,
            elapsed,
            c.budget
        );
        if let Some(f) = &report.failure {
            println!("    first failure: {f}");
        }
        if !in_time {
            println!("    over the time budget");
        }
        for n in &report.notes {
            println!("    note: {n}");
        }
    }
    println!("{failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
