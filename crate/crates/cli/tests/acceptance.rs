//! One line per acceptance criterion. Run with `cargo test -p mvmob-cli
//! --test acceptance`.

#[path = "../../core/tests/common/crud.rs"]
mod crud;
#[allow(dead_code)]
#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mvmob_core::analysis::reachable_views;
use mvmob_core::codegen::{bundle_to_string, generate_bundle, render_prototype};
use mvmob_core::dsl::{
    parse_correspondences, parse_data, parse_logic, parse_navigation, parse_ui,
    print_correspondences, print_data, print_logic, print_navigation, print_ui,
};
use mvmob_core::expr::{evaluate, Environment, Value};
use mvmob_core::model::{Correspondence, CorrespondenceType, ModelKind, Project};
use mvmob_core::sim::{run, trace_to_jsonl, Scenario, TraceKind};
use mvmob_core::testkit::{
    cityguide, cityguide_dir, random_correspondences, random_data, random_logic, random_nav_graph,
    random_navigation, random_ui, rng,
};
use mvmob_core::{validate_project, viewpoints_of, Stakeholder};
use rand::Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn table_one() -> Outcome {
    use ModelKind::*;
    let rows: [(Stakeholder, &[ModelKind]); 8] = [
        (
            Stakeholder::UiDesigner,
            &[Navigation, Data, UI, BusinessLogic],
        ),
        (
            Stakeholder::AppDeveloper,
            &[Navigation, Data, UI, BusinessLogic],
        ),
        (Stakeholder::BackEndDeveloper, &[Data, BusinessLogic]),
        (Stakeholder::InformationArchitect, &[Navigation, Data, UI]),
        (Stakeholder::ContentProducer, &[Data]),
        (Stakeholder::User, &[UI]),
        (Stakeholder::Customer, &[Navigation, UI]),
        (Stakeholder::ProjectManager, &[Navigation, UI]),
    ];
    ensure(Stakeholder::ALL.len() == rows.len(), || "role count".into())?;
    let mut marks = 0;
    for (s, kinds) in rows {
        let want: BTreeSet<ModelKind> = kinds.iter().copied().collect();
        ensure(viewpoints_of(s) == want, || {
            format!("{s}: {:?}", viewpoints_of(s))
        })?;
        marks += want.len();
    }
    ensure(marks == 19, || format!("{marks} checkmarks"))
}

fn round_trip() -> Outcome {
    macro_rules! check {
        ($gen:ident, $print:ident, $parse:ident) => {
            for seed in 0..300 {
                let model = $gen(&mut rng(seed));
                let text = $print(&model);
                let parsed = $parse(&text, "r");
                ensure(
                    parsed.diagnostics.is_empty() && parsed.model.as_ref() == Some(&model),
                    || format!("{} seed {seed}:\n{text}", stringify!($gen)),
                )?;
            }
        };
    }
    check!(random_navigation, print_navigation, parse_navigation);
    check!(random_data, print_data, parse_data);
    check!(random_ui, print_ui, parse_ui);
    check!(random_logic, print_logic, parse_logic);
    check!(
        random_correspondences,
        print_correspondences,
        parse_correspondences
    );
    Ok(())
}

fn expressions() -> Outcome {
    for seed in 0..200 {
        let e = oracle::bool_expr(&mut rng(10_000 + seed), 4);
        for bits in 0..8u8 {
            let row = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
            let env: Environment = oracle::VARS
                .iter()
                .zip(row)
                .map(|(n, b)| (n.to_string(), Value::Bool(b)))
                .collect();
            ensure(evaluate(&e, &env) == oracle::truth_table(&e, row), || {
                format!("seed {seed} row {row:?}: {e}")
            })?;
        }
    }
    Ok(())
}

fn reachability() -> Outcome {
    for seed in 0..200 {
        let nav = random_nav_graph(&mut rng(seed), 10, 25);
        let got: BTreeSet<String> = reachable_views(&nav)
            .iter()
            .map(|v| v.name().to_string())
            .collect();
        ensure(got == oracle::path_enumeration(&nav), || {
            format!("seed {seed}")
        })?;
    }
    Ok(())
}

fn correspondence_typing() -> Outcome {
    use CorrespondenceType::*;
    // (correspondence to drop first, type, left, right, expected code)
    type Case = (
        Option<&'static str>,
        CorrespondenceType,
        &'static str,
        &'static str,
        Option<&'static str>,
    );
    let cases: [Case; 15] = [
        (
            Some("aboutLayout"),
            ViewMainContainer,
            "Navigation:about",
            "UI:aboutMain",
            None,
        ),
        (
            None,
            ViewMainContainer,
            "Navigation:about",
            "UI:cities",
            Some("VAL200"),
        ),
        (
            None,
            ViewMainContainer,
            "Navigation:home",
            "UI:aboutMain",
            Some("VAL201"),
        ),
        (
            None,
            AttributeLabel,
            "Data:Country.name",
            "UI:credits",
            None,
        ),
        (
            None,
            AttributeLabel,
            "Data:City.name",
            "UI:addCity",
            Some("VAL210"),
        ),
        (
            None,
            AttributeLabel,
            "Data:City",
            "UI:credits",
            Some("VAL210"),
        ),
        (
            None,
            ActionDataOperation,
            "BusinessLogic:addCity.make",
            "Data:City.create",
            None,
        ),
        (
            None,
            ActionDataOperation,
            "BusinessLogic:browse.go",
            "Data:City.read",
            Some("VAL220"),
        ),
        (
            None,
            ActionDataOperation,
            "BusinessLogic:browse.load",
            "Data:City.create",
            Some("VAL220"),
        ),
        (
            None,
            ElementEntityBinding,
            "UI:detailMain",
            "Data:City",
            None,
        ),
        (
            None,
            ElementEntityBinding,
            "UI:rowName",
            "Data:City",
            Some("VAL230"),
        ),
        (
            None,
            ElementEntityBinding,
            "UI:cities",
            "Data:City.name",
            Some("VAL230"),
        ),
        (
            Some("browseLink"),
            NavItemFlow,
            "UI:browse",
            "Navigation:toList",
            None,
        ),
        (
            None,
            NavItemFlow,
            "UI:addCity",
            "Navigation:toDetail",
            Some("VAL231"),
        ),
        (
            None,
            NavItemFlow,
            "UI:browse",
            "Navigation:openCity",
            Some("VAL231"),
        ),
    ];
    let base = cityguide();
    for (drop, ctype, l, r, want) in cases {
        let mut p = base.clone();
        p.correspondences.retain(|c| Some(c.name()) != drop);
        let probe = Correspondence::new("probe", ctype, l.parse().unwrap(), r.parse().unwrap())
            .map_err(|e| e.to_string())?;
        p.correspondences.push(probe);
        let got: BTreeSet<&str> = validate_project(&p).errors().map(|d| d.code).collect();
        let want: BTreeSet<&str> = want.into_iter().collect();
        ensure(got == want, || {
            format!("{ctype} {l} {r}: {got:?} != {want:?}")
        })?;
    }
    Ok(())
}

fn simulator() -> Outcome {
    let p = cityguide();
    let text = std::fs::read_to_string(cityguide_dir().join("scenarios/browse-and-detail.scn"))
        .map_err(|e| e.to_string())?;
    let scenario = Scenario::parse(&text).map_err(|e| e.to_string())?;
    let (_, trace) = run(&p, &scenario).map_err(|e| e.to_string())?;
    let (_, again) = run(&p, &scenario).map_err(|e| e.to_string())?;
    ensure(
        trace_to_jsonl(&trace) == golden("browse-and-detail.trace.jsonl"),
        || "trace differs from golden".into(),
    )?;
    ensure(trace == again, || "replay differs".into())?;
    let reach = reachable_views(&p.navigation);
    let mut view = p.navigation.entry().cloned().ok_or("no entry")?;
    let mut visited = BTreeSet::from([view.clone()]);
    for e in trace.iter().filter(|e| e.kind == TraceKind::Navigated) {
        ensure(e.detail["from"] == view.to_string(), || {
            format!("step {}", e.step)
        })?;
        view = e.detail["to"]
            .as_str()
            .unwrap_or("")
            .parse()
            .map_err(|_| "bad view")?;
        visited.insert(view.clone());
    }
    ensure(visited.len() > 1, || "no navigation happened".into())?;
    ensure(visited.is_subset(&reach), || {
        format!("{visited:?} not within {reach:?}")
    })
}

fn crud_oracle() -> Outcome {
    let p = crud::project();
    for seed in 0..100 {
        let mut r = rng(seed);
        let len = r.gen_range(1..40);
        crud::check_sequence(&p, &mut r, len).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(())
}

fn codegen_fidelity() -> Outcome {
    let p: Project = cityguide();
    let files = render_prototype(&p).map_err(|e| e.to_string())?;
    let link = regex::Regex::new(r#"<a [^>]*href="([A-Za-z0-9_]+)\.html""#).unwrap();
    let mut links = BTreeSet::new();
    for (name, text) in &files {
        if let Some(view) = name.strip_suffix(".html").filter(|v| *v != "index") {
            for cap in link.captures_iter(text) {
                links.insert((view.to_string(), cap[1].to_string()));
            }
        }
    }
    let flows: BTreeSet<(String, String)> = p
        .correspondences
        .iter()
        .filter(|c| c.ctype == CorrespondenceType::NavItemFlow)
        .filter_map(|c| p.navigation.flows().iter().find(|f| f.id == c.right))
        .map(|f| (f.source.name().to_string(), f.target.name().to_string()))
        .collect();
    ensure(!flows.is_empty() && links == flows, || {
        format!("{links:?} != {flows:?}")
    })?;
    let first = bundle_to_string(&generate_bundle(&p).map_err(|e| e.to_string())?);
    let second = bundle_to_string(&generate_bundle(&p).map_err(|e| e.to_string())?);
    ensure(first == second, || "bundle differs between runs".into())
}

fn end_to_end() -> Outcome {
    let tmp = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let project = cityguide_dir();
    let out: PathBuf = tmp.path().join("out");
    let scenario = project.join("scenarios/browse-and-detail.scn");
    let stages: [&[&str]; 5] = [
        &["check"],
        &["analyze"],
        &["project", "user"],
        &["simulate", "--scenario", scenario.to_str().ok_or("path")?],
        &["generate"],
    ];
    for args in stages {
        let status = Command::new(env!("CARGO_BIN_EXE_mvmob"))
            .arg("--project")
            .arg(&project)
            .arg("--out")
            .arg(&out)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.success(), || {
            format!("{args:?} exited with {status}")
        })?;
    }
    ensure(out.join("prototype/index.html").exists(), || {
        "no prototype".into()
    })
}

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "table-one-fidelity",
            table_one,
            Some(Duration::from_secs(1)),
        ),
        ("round-trip", round_trip, Some(Duration::from_secs(30))),
        (
            "expression-oracle",
            expressions,
            Some(Duration::from_secs(10)),
        ),
        (
            "reachability-oracle",
            reachability,
            Some(Duration::from_secs(10)),
        ),
        ("correspondence-typing", correspondence_typing, None),
        (
            "simulator-determinism-soundness",
            simulator,
            Some(Duration::from_secs(5)),
        ),
        ("crud-oracle", crud_oracle, None),
        ("codegen-fidelity", codegen_fidelity, None),
        ("end-to-end", end_to_end, Some(Duration::from_secs(10))),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if took > l => Err(format!("took longer than {l:?}")),
            (o, _) => o,
        };
        let limit_text = limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match outcome {
            Ok(()) => println!("PASS {name} ({took:.2?}{limit_text})"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name} ({took:.2?}{limit_text}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
