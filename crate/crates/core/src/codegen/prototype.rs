use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{ensure_valid, main_container, GenError};
use crate::model::{
    BasicKind, ContainerKind, CorrespondenceType, ElementId, ElementKind, NavigationFlow, Project,
    UiElement, View,
};

pub const STYLES: &str = "\
body { font-family: sans-serif; margin: 0; background: #f4f4f4; }
header.view-title { padding: 0.75em 1em; background: #334; color: #fff; font-weight: bold; }
main.view { max-width: 28em; margin: 1em auto; background: #fff; padding: 0.5em; }
.container { border: 1px dashed #99a; padding: 0.5em; margin: 0.25em 0; }
.container.empty { min-height: 2em; }
.grid { display: grid; grid-template-columns: 1fr 1fr; gap: 0.25em; }
.navigationBar, .menu { display: flex; gap: 0.5em; }
.listItems > * { display: block; }
.map, .image { background: #dde; text-align: center; padding: 1em; }
.label.bound { font-style: italic; }
.navigationItem { color: #226; }
.navigationItem.inactive { color: #888; }
.guard { color: #a60; font-size: 0.8em; margin-left: 0.25em; }
";

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

struct Ctx<'a> {
    project: &'a Project,
    /// label id -> bound property ids
    labels: BTreeMap<&'a ElementId, Vec<&'a ElementId>>,
    /// navigation item id -> linked flows
    items: BTreeMap<&'a ElementId, Vec<&'a NavigationFlow>>,
}

impl<'a> Ctx<'a> {
    fn new(project: &'a Project) -> Self {
        let mut labels: BTreeMap<_, Vec<_>> = BTreeMap::new();
        let mut items: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for c in &project.correspondences {
            match c.ctype {
                CorrespondenceType::AttributeLabel => {
                    labels.entry(&c.right).or_default().push(&c.left)
                }
                CorrespondenceType::NavItemFlow => {
                    if let Some(f) = project.navigation.flow_by_id(&c.right) {
                        items.entry(&c.left).or_default().push(f);
                    }
                }
                _ => {}
            }
        }
        Ctx {
            project,
            labels,
            items,
        }
    }

    fn text(e: &UiElement) -> String {
        esc(e
            .attributes
            .get("text")
            .map(String::as_str)
            .unwrap_or(e.name()))
    }

    fn element(&self, view: &View, e: &UiElement, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let name = esc(e.name());
        let kind = match e.kind {
            ElementKind::Container(ContainerKind::PlainContainer) => "plainContainer",
            k => k.keyword(),
        };
        match e.kind {
            ElementKind::Container(_) => {
                let _ = writeln!(out, "{pad}<div class=\"container {kind}\" id=\"{name}\">");
                for c in &e.children {
                    self.element(view, c, depth + 1, out);
                }
                let _ = writeln!(out, "{pad}</div>");
            }
            ElementKind::Basic(b) => {
                let text = Self::text(e);
                let body = match b {
                    BasicKind::Button => format!("<button class=\"button\" id=\"{name}\" type=\"button\">{text}</button>"),
                    BasicKind::Label => match self.labels.get(&e.id) {
                        Some(props) => {
                            let ph: Vec<String> = props.iter().map(|p| format!("{{{}}}", esc(&p.dotted()))).collect();
                            format!("<span class=\"label bound\" id=\"{name}\">{}</span>", ph.join(" "))
                        }
                        None => format!("<span class=\"label\" id=\"{name}\">{text}</span>"),
                    },
                    BasicKind::Map => format!("<div class=\"map\" id=\"{name}\">map: {text}</div>"),
                    BasicKind::Image => format!("<div class=\"image\" id=\"{name}\">image: {text}</div>"),
                    BasicKind::TextInput => format!(
                        "<input class=\"textInput\" id=\"{name}\" type=\"text\" placeholder=\"{text}\">"
                    ),
                    BasicKind::NavigationItem => self.nav_item(view, e, &name, &text),
                };
                let _ = writeln!(out, "{pad}{body}");
            }
        }
    }

    /// One anchor per linked flow leaving this view; an inert span when
    /// there is none.
    fn nav_item(&self, view: &View, e: &UiElement, name: &str, text: &str) -> String {
        let flows: Vec<&NavigationFlow> = self
            .items
            .get(&e.id)
            .map(|fs| fs.iter().copied().filter(|f| f.source == view.id).collect())
            .unwrap_or_default();
        if flows.is_empty() {
            return format!("<span class=\"navigationItem inactive\" id=\"{name}\">{text}</span>");
        }
        flows
            .iter()
            .map(|f| {
                let target = esc(f.target.name());
                let guard = f
                    .guard
                    .as_ref()
                    .map(|g| format!("<small class=\"guard\">when {}</small>", esc(&g.to_string())))
                    .unwrap_or_default();
                format!("<a class=\"navigationItem\" id=\"{name}\" href=\"{target}.html\">{text}</a>{guard}")
            })
            .collect::<Vec<_>>()
            .join("")
    }

    fn page(&self, view: &View) -> String {
        let title = esc(&view.title);
        let mut body = String::new();
        match main_container(self.project, &view.id).and_then(|c| self.project.ui.element(c)) {
            Some(root) => self.element(view, root, 2, &mut body),
            None => body.push_str("    <div class=\"container empty\"></div>\n"),
        }
        format!(
            "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{title}</title>\n\
             <link rel=\"stylesheet\" href=\"styles.css\">\n</head>\n<body>\n\
             <header class=\"view-title\">{title}</header>\n<main class=\"view\" id=\"view-{}\">\n{body}</main>\n</body>\n</html>\n",
            esc(&view.name)
        )
    }
}

fn index(entry: &str) -> String {
    let target = format!("{}.html", esc(entry));
    format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n\
         <meta http-equiv=\"refresh\" content=\"0; url={target}\">\n<title>Redirect</title>\n</head>\n\
         <body><a href=\"{target}\">{target}</a></body>\n</html>\n"
    )
}

/// File name and contents of every prototype document, in write order:
/// `styles.css`, one page per view, then `index.html`.
pub fn render_prototype(project: &Project) -> Result<Vec<(String, String)>, GenError> {
    ensure_valid(project)?;
    let ctx = Ctx::new(project);
    let mut files = vec![("styles.css".to_string(), STYLES.to_string())];
    for v in project.navigation.views() {
        files.push((format!("{}.html", v.name), ctx.page(v)));
    }
    let entry = project
        .navigation
        .entry()
        .map(|e| e.name().to_string())
        .unwrap_or_default();
    files.push(("index.html".to_string(), index(&entry)));
    Ok(files)
}

/// Writes the prototype into `out_dir`, index last. Returns written paths.
pub fn generate_prototype(project: &Project, out_dir: &Path) -> Result<Vec<PathBuf>, GenError> {
    let files = render_prototype(project)?;
    std::fs::create_dir_all(out_dir).map_err(|source| GenError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, text) in files {
        let path = out_dir.join(name);
        std::fs::write(&path, text).map_err(|source| GenError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
