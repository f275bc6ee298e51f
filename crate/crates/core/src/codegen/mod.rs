//! Bundle and static prototype generation.

mod bundle;
mod prototype;

use std::path::PathBuf;

pub use bundle::{bundle_to_string, generate_bundle};
pub use prototype::{generate_prototype, render_prototype, STYLES};

use crate::model::{CorrespondenceType, ElementId, Project};
use crate::validate::validate_project;

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("project is not valid ({0} error diagnostics)")]
    InvalidProject(usize),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn ensure_valid(project: &Project) -> Result<(), GenError> {
    let report = validate_project(project);
    if report.valid {
        Ok(())
    } else {
        Err(GenError::InvalidProject(report.errors().count()))
    }
}

/// Main container of `view`, if any.
fn main_container<'a>(project: &'a Project, view: &ElementId) -> Option<&'a ElementId> {
    project
        .correspondences
        .iter()
        .find(|c| c.ctype == CorrespondenceType::ViewMainContainer && &c.left == view)
        .map(|c| &c.right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_correspondences, parse_navigation, parse_ui};

    fn minimal() -> Project {
        Project {
            name: "m".into(),
            navigation: parse_navigation("view home \"Home\" entry", "m.nav")
                .model
                .unwrap(),
            ..Project::default()
        }
    }

    #[test]
    fn minimal_bundle() {
        let b = generate_bundle(&minimal()).unwrap();
        assert_eq!(b["views"].as_array().unwrap().len(), 1);
        assert_eq!(b["views"][0]["id"], "Navigation:home");
        assert!(b["entities"].as_array().unwrap().is_empty());
        assert!(b["rules"].as_array().unwrap().is_empty());
        assert_eq!(
            bundle_to_string(&b),
            bundle_to_string(&generate_bundle(&minimal()).unwrap())
        );
    }

    #[test]
    fn minimal_prototype() {
        let files = render_prototype(&minimal()).unwrap();
        let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["styles.css", "home.html", "index.html"]);
        assert!(files[1].1.contains("<div class=\"container empty\"></div>"));
        assert!(files[2].1.contains("url=home.html"));
    }

    #[test]
    fn invalid_project_is_refused() {
        let p = Project {
            navigation: parse_navigation("view a \"A\" entry\nflow f: a -> nowhere", "x.nav")
                .model
                .unwrap(),
            ..Project::default()
        };
        assert!(matches!(
            generate_bundle(&p),
            Err(GenError::InvalidProject(_))
        ));
        assert!(render_prototype(&p).is_err());
    }

    #[test]
    fn nav_item_becomes_link() {
        let p = Project {
            name: "n".into(),
            navigation: parse_navigation(
                "view home \"Home\" entry\nview detail \"Detail\"\nflow toDetail: home -> detail when ready\n",
                "n.nav",
            )
            .model
            .unwrap(),
            ui: parse_ui("container homeMain { navigationItem more [text=\"More\"] }\ncontainer detailMain {}", "n.ui")
                .model
                .unwrap(),
            correspondences: parse_correspondences(
                "correspond ViewMainContainer m1 <-> Navigation:home UI:homeMain\n\
                 correspond ViewMainContainer m2 <-> Navigation:detail UI:detailMain\n\
                 correspond NavItemFlow l1 <-> UI:more Navigation:toDetail\n",
                "n.corr",
            )
            .model
            .unwrap(),
            ..Project::default()
        };
        let files = render_prototype(&p).unwrap();
        let home = &files.iter().find(|(n, _)| n == "home.html").unwrap().1;
        assert!(home.contains("href=\"detail.html\""), "{home}");
        assert!(home.contains("when ready"));
    }
}
