use std::fs;
use std::path::{Path, PathBuf};

use mvmob_core::analysis::{run_analyses, AnalysisKind};
use mvmob_core::codegen::{bundle_to_string, generate_bundle, generate_prototype, GenError};
use mvmob_core::diag::{Diagnostic, Severity};
use mvmob_core::dsl::{print_correspondences, print_data, print_logic, print_navigation, print_ui};
use mvmob_core::manifest::{parse_sources, read_manifest, LoadError, Manifest, MANIFEST_FILE};
use mvmob_core::model::{ModelKind, Project};
use mvmob_core::sim::{run, trace_to_jsonl, Scenario, ScenarioError, SeedError, TraceKind};
use mvmob_core::validate::{validate_models, ValidationReport};
use mvmob_core::{load_project, viewpoints_of, LoadedProject, ProjectedSlice, Stakeholder};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Config, Exit, Format, Target};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("`{command}` needs all four models; the manifest omits {missing}")]
    Incomplete {
        command: &'static str,
        missing: String,
    },
    #[error("cannot read scenario {}: {source}", path.display())]
    ScenarioRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario {}: {source}", path.display())]
    Scenario {
        path: PathBuf,
        #[source]
        source: ScenarioError,
    },
    #[error("scenario {}: {source}", path.display())]
    Seed {
        path: PathBuf,
        #[source]
        source: SeedError,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Scenario { .. } | CliError::Seed { .. } => Exit::ParseError,
            CliError::Gen(GenError::InvalidProject(_)) => Exit::Findings,
            _ => Exit::Environment,
        }
    }
}

type CmdResult = Result<Exit, CliError>;

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, text).map_err(io)
}

fn emit(config: &Config, human: &[String], doc: Value) {
    match config.format {
        Format::Human => {
            for line in human {
                println!("{line}");
            }
        }
        Format::Json => println!("{doc:#}"),
    }
}

fn counts(diags: &[Diagnostic]) -> (usize, usize) {
    let errors = diags.iter().filter(|d| d.is_error()).count();
    (errors, diags.len() - errors)
}

fn emit_report(config: &Config, report: &ValidationReport) {
    let mut lines: Vec<String> = report
        .diagnostics
        .iter()
        .map(Diagnostic::to_human)
        .collect();
    let (errors, warnings) = counts(&report.diagnostics);
    lines.push(format!("{errors} error(s), {warnings} warning(s)"));
    emit(config, &lines, report.to_json());
}

/// Loads the project, reporting parse failures.
fn load(config: &Config) -> Result<Result<LoadedProject, Exit>, CliError> {
    let loaded = load_project(&config.project)?;
    if !loaded.parse_ok() {
        emit_report(
            config,
            &ValidationReport::from_diagnostics(loaded.diagnostics),
        );
        return Ok(Err(Exit::ParseError));
    }
    Ok(Ok(loaded))
}

/// A complete project that passed validation.
fn valid_project(
    config: &Config,
    command: &'static str,
) -> Result<Result<Project, Exit>, CliError> {
    let loaded = match load(config)? {
        Ok(l) => l,
        Err(exit) => return Ok(Err(exit)),
    };
    let report = validate_models(&loaded.slice.models());
    let Some(project) = loaded.project() else {
        let missing: Vec<&str> = ModelKind::VIEWPOINTS
            .into_iter()
            .filter(|k| loaded.manifest.path_of(*k).is_none())
            .map(ModelKind::as_str)
            .collect();
        return Err(CliError::Incomplete {
            command,
            missing: missing.join(", "),
        });
    };
    if !report.valid {
        emit_report(config, &report);
        return Ok(Err(Exit::Findings));
    }
    Ok(Ok(project))
}

pub fn check(config: &Config) -> CmdResult {
    let loaded = match load(config)? {
        Ok(l) => l,
        Err(exit) => return Ok(exit),
    };
    let report = validate_models(&loaded.slice.models());
    emit_report(config, &report);
    let (errors, warnings) = counts(&report.diagnostics);
    Ok(if errors > 0 || (config.fail_on_warning && warnings > 0) {
        Exit::Findings
    } else {
        Exit::Success
    })
}

pub fn analyze(config: &Config, kinds: &[AnalysisKind]) -> CmdResult {
    let project = match valid_project(config, "analyze")? {
        Ok(p) => p,
        Err(exit) => return Ok(exit),
    };
    let kinds = if kinds.is_empty() {
        &AnalysisKind::ALL[..]
    } else {
        kinds
    };
    let results = run_analyses(&project, kinds);
    let mut lines = Vec::new();
    let mut exit = Exit::Success;
    for r in &results {
        let path = config.out.join("analysis").join(format!("{}.json", r.name));
        write_file(&path, &format!("{:#}\n", r.to_json()))?;
        lines.push(format!(
            "{}: {} finding(s), report {}",
            r.name,
            r.findings.len(),
            path.display()
        ));
        for f in &r.findings {
            lines.push(format!("  {} {} {}", f.severity, f.element, f.message));
            let fails = f.severity == Severity::Error
                || (config.fail_on_warning && f.severity == Severity::Warning);
            if fails {
                exit = Exit::Findings;
            }
        }
    }
    let doc = json!({ "analyses": results.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
    emit(config, &lines, doc);
    Ok(exit)
}

fn file_name(rel: &str) -> String {
    Path::new(rel)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| rel.to_string())
}

/// Canonical text of every model present in `slice`, keyed by kind.
fn print_slice(slice: &ProjectedSlice, with_correspondences: bool) -> Vec<(ModelKind, String)> {
    let mut out = Vec::new();
    if let Some(m) = &slice.navigation {
        out.push((ModelKind::Navigation, print_navigation(m)));
    }
    if let Some(m) = &slice.data {
        out.push((ModelKind::Data, print_data(m)));
    }
    if let Some(m) = &slice.ui {
        out.push((ModelKind::UI, print_ui(m)));
    }
    if let Some(m) = &slice.logic {
        out.push((ModelKind::BusinessLogic, print_logic(m)));
    }
    if with_correspondences {
        out.push((
            ModelKind::Correspondence,
            print_correspondences(&slice.correspondences),
        ));
    }
    out
}

pub fn project(config: &Config, stakeholder: Stakeholder) -> CmdResult {
    let loaded = match load(config)? {
        Ok(l) => l,
        Err(exit) => return Ok(exit),
    };
    let report = validate_models(&loaded.slice.models());
    if !report.valid {
        emit_report(config, &report);
        return Ok(Exit::Findings);
    }
    let slice = loaded.slice.project(stakeholder);
    let dir = config.out.join("slices").join(stakeholder.as_str());
    // A single viewpoint cannot hold a correspondence, so no file for it.
    let with_corr =
        loaded.manifest.correspondences.is_some() && viewpoints_of(stakeholder).len() > 1;
    let mut manifest = Manifest {
        name: loaded.manifest.name.clone(),
        navigation: None,
        data: None,
        ui: None,
        logic: None,
        correspondences: None,
    };
    let mut files = Vec::new();
    for (kind, text) in print_slice(&slice, with_corr) {
        let name = loaded
            .manifest
            .path_of(kind)
            .map(file_name)
            .unwrap_or_else(|| format!("{}.{}", loaded.manifest.name, kind.extension()));
        write_file(&dir.join(&name), &text)?;
        manifest.set_path(kind, Some(name.clone()));
        files.push(name);
    }
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("plain data serializes");
    write_file(&dir.join(MANIFEST_FILE), &(manifest_text + "\n"))?;

    let viewpoints: Vec<&str> = slice
        .viewpoints()
        .into_iter()
        .map(ModelKind::as_str)
        .collect();
    let lines = vec![
        format!(
            "{stakeholder}: {} ({} correspondence(s))",
            viewpoints.join(", "),
            slice.correspondences.len()
        ),
        format!("wrote {} file(s) to {}", files.len() + 1, dir.display()),
    ];
    let doc = json!({
        "stakeholder": stakeholder.as_str(),
        "viewpoints": viewpoints,
        "correspondences": slice.correspondences.len(),
        "directory": dir.display().to_string(),
        "files": files,
    });
    emit(config, &lines, doc);
    Ok(Exit::Success)
}

pub fn simulate(config: &Config, scenario_path: &Path) -> CmdResult {
    let project = match valid_project(config, "simulate")? {
        Ok(p) => p,
        Err(exit) => return Ok(exit),
    };
    let text = fs::read_to_string(scenario_path).map_err(|source| CliError::ScenarioRead {
        path: scenario_path.to_path_buf(),
        source,
    })?;
    let scenario = Scenario::parse(&text).map_err(|source| CliError::Scenario {
        path: scenario_path.to_path_buf(),
        source,
    })?;
    let (state, trace) = run(&project, &scenario).map_err(|source| CliError::Seed {
        path: scenario_path.to_path_buf(),
        source,
    })?;
    let stem = scenario_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".to_string());
    let dir = config.out.join("traces");
    let trace_path = dir.join(format!("{stem}.jsonl"));
    let state_path = dir.join(format!("{stem}.state.json"));
    write_file(&trace_path, &trace_to_jsonl(&trace))?;
    write_file(&state_path, &format!("{:#}\n", state.to_json()))?;

    let exhausted = trace.iter().any(|e| e.kind == TraceKind::BudgetExhausted);
    let skipped = trace
        .iter()
        .filter(|e| e.kind == TraceKind::ActionSkipped)
        .count();
    let mut lines = vec![format!(
        "{} trace event(s), {skipped} skipped action(s), final view {}",
        trace.len(),
        state.current_view
    )];
    if exhausted {
        lines.push("step budget exhausted".to_string());
    }
    lines.push(format!("trace {}", trace_path.display()));
    let doc = json!({
        "scenario": scenario_path.display().to_string(),
        "events": trace.len(),
        "skipped": skipped,
        "currentView": state.current_view.to_string(),
        "budgetExhausted": exhausted,
        "trace": trace_path.display().to_string(),
        "state": state_path.display().to_string(),
    });
    emit(config, &lines, doc);
    Ok(if exhausted {
        Exit::Findings
    } else {
        Exit::Success
    })
}

pub fn generate(config: &Config, targets: &[Target]) -> CmdResult {
    let project = match valid_project(config, "generate")? {
        Ok(p) => p,
        Err(exit) => return Ok(exit),
    };
    let targets = if targets.is_empty() {
        &[Target::Bundle, Target::Prototype][..]
    } else {
        targets
    };
    let mut files: Vec<PathBuf> = Vec::new();
    if targets.contains(&Target::Bundle) {
        let path = config.out.join("bundle.json");
        write_file(&path, &bundle_to_string(&generate_bundle(&project)?))?;
        files.push(path);
    }
    if targets.contains(&Target::Prototype) {
        files.extend(generate_prototype(&project, &config.out.join("prototype"))?);
    }
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let lines: Vec<String> = names.iter().map(|n| format!("wrote {n}")).collect();
    emit(config, &lines, json!({ "files": names }));
    Ok(Exit::Success)
}

pub fn format(config: &Config, check_only: bool) -> CmdResult {
    let manifest = read_manifest(&config.project)?;
    let mut texts = Vec::new();
    for kind in ModelKind::VIEWPOINTS
        .into_iter()
        .chain([ModelKind::Correspondence])
    {
        if let Some(rel) = manifest.path_of(kind) {
            let path = config.project.join(rel);
            let text = fs::read_to_string(&path)
                .map_err(|source| CliError::Load(LoadError::Io { path, source }))?;
            texts.push((kind, rel.to_string(), text));
        }
    }
    let (slice, diags) = parse_sources(&manifest.name, &texts);
    if diags.iter().any(Diagnostic::is_error) {
        emit_report(config, &ValidationReport::from_diagnostics(diags));
        return Ok(Exit::ParseError);
    }
    let printed = print_slice(&slice, manifest.correspondences.is_some());
    let mut changed = Vec::new();
    for ((_, rel, old), (_, new)) in texts.iter().zip(&printed) {
        if old != new {
            if !check_only {
                write_file(&config.project.join(rel), new)?;
            }
            changed.push(rel.clone());
        }
    }
    let verb = if check_only {
        "would reformat"
    } else {
        "reformatted"
    };
    let mut lines: Vec<String> = changed.iter().map(|f| format!("{verb} {f}")).collect();
    lines.push(format!(
        "{} of {} file(s) {}",
        changed.len(),
        texts.len(),
        if check_only {
            "not canonical"
        } else {
            "rewritten"
        }
    ));
    emit(
        config,
        &lines,
        json!({ "check": check_only, "files": texts.len(), "changed": changed }),
    );
    Ok(if check_only && !changed.is_empty() {
        Exit::Findings
    } else {
        Exit::Success
    })
}
