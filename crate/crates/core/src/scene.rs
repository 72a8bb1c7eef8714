//! Declarative figure descriptions, read from TOML. A scene holds one or
//! more panels; each panel fixes σ (the drawing), σ̆ and s, and lists the
//! elements to draw. Top-level elements form a single panel when no
//! `[[panel]]` tables are given.

use serde::Deserialize;

use crate::cycle::{Cycle, FsccParams, Point};
use crate::error::{Error, Result};
use crate::hypercomplex::Sigma;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    #[serde(default = "default_stroke")]
    pub stroke: String,
    #[serde(default = "default_width")]
    pub width: f64,
    #[serde(default)]
    pub dash: Option<String>,
}

fn default_stroke() -> String {
    "black".into()
}

fn default_width() -> f64 {
    1.0
}

impl Default for Style {
    fn default() -> Self {
        Style { stroke: default_stroke(), width: default_width(), dash: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Element {
    Cycle {
        #[serde(default)]
        id: Option<String>,
        cycle: [f64; 4],
        #[serde(default)]
        style: Style,
    },
    /// Orbit of the rotation subgroup through `start`.
    Orbit {
        #[serde(default)]
        id: Option<String>,
        start: [f64; 2],
        #[serde(default)]
        style: Style,
    },
    Point {
        #[serde(default)]
        id: Option<String>,
        at: [f64; 2],
        #[serde(default)]
        style: Style,
    },
    GhostOf {
        of: String,
        #[serde(default)]
        style: Style,
    },
    SGhostOf {
        of: String,
        #[serde(default)]
        style: Style,
    },
    ZeroRadiusAt {
        at: [f64; 2],
        #[serde(default)]
        style: Style,
    },
}

impl Element {
    pub fn id(&self) -> Option<&str> {
        match self {
            Element::Cycle { id, .. } | Element::Orbit { id, .. } | Element::Point { id, .. } => id.as_deref(),
            _ => None,
        }
    }
}

/// One drawing; `sigma_breve` defaults to `sigma`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(from = "RawPanel")]
pub struct Panel {
    pub sigma: Sigma,
    pub sigma_breve: Sigma,
    pub s: f64,
    pub title: Option<String>,
    pub elements: Vec<Element>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPanel {
    sigma: Sigma,
    #[serde(default)]
    sigma_breve: Option<Sigma>,
    #[serde(default = "one")]
    s: f64,
    #[serde(default)]
    title: Option<String>,
    #[serde(default, rename = "element")]
    elements: Vec<Element>,
}

impl From<RawPanel> for Panel {
    fn from(r: RawPanel) -> Self {
        Panel {
            sigma: r.sigma,
            sigma_breve: r.sigma_breve.unwrap_or(r.sigma),
            s: r.s,
            title: r.title,
            elements: r.elements,
        }
    }
}

fn one() -> f64 {
    1.0
}

impl Panel {
    pub fn params(&self) -> FsccParams {
        FsccParams::with_s(self.sigma_breve, self.s)
    }

    /// The cycle an element names, for `ghost-of` and `s-ghost-of`.
    pub fn cycle_by_id(&self, id: &str) -> Result<Cycle> {
        for e in &self.elements {
            if e.id() == Some(id) {
                return match e {
                    Element::Cycle { cycle, .. } => Ok(Cycle::from_array(*cycle)),
                    Element::Orbit { start, .. } => {
                        Ok(crate::render::orbit_cycle(Point::new(start[0], start[1]), self.sigma))
                    }
                    _ => Err(Error::UnresolvedReference(id.to_string())),
                };
            }
        }
        Err(Error::UnresolvedReference(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    #[serde(default)]
    title: Option<String>,
    viewport: [f64; 4],
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default = "default_columns")]
    columns: usize,
    #[serde(default = "default_size")]
    panel_size: f64,
    #[serde(default)]
    sigma: Option<Sigma>,
    #[serde(default)]
    sigma_breve: Option<Sigma>,
    #[serde(default)]
    s: Option<f64>,
    #[serde(default, rename = "element")]
    elements: Vec<Element>,
    #[serde(default, rename = "panel")]
    panels: Vec<Panel>,
}

fn default_samples() -> usize {
    256
}

fn default_columns() -> usize {
    3
}

fn default_size() -> f64 {
    300.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub title: Option<String>,
    /// `(xmin, xmax, ymin, ymax)`.
    pub viewport: [f64; 4],
    pub samples: usize,
    pub columns: usize,
    pub panel_size: f64,
    pub panels: Vec<Panel>,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene> {
        let raw: RawScene = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut panels = raw.panels;
        if !raw.elements.is_empty() || panels.is_empty() {
            let sigma = raw.sigma.ok_or_else(|| Error::Parse("missing `sigma`".into()))?;
            panels.insert(
                0,
                Panel {
                    sigma,
                    sigma_breve: raw.sigma_breve.unwrap_or(sigma),
                    s: raw.s.unwrap_or(1.0),
                    title: None,
                    elements: raw.elements,
                },
            );
        }
        let scene = Scene {
            title: raw.title,
            viewport: raw.viewport,
            samples: raw.samples,
            columns: raw.columns.max(1),
            panel_size: raw.panel_size,
            panels,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        let [x0, x1, y0, y1] = self.viewport;
        if !(x1 > x0 && y1 > y0) || !self.viewport.iter().all(|v| v.is_finite()) {
            return Err(Error::EmptyViewport);
        }
        if self.samples < 32 {
            return Err(Error::Parse(format!("samples = {} is below 32", self.samples)));
        }
        if !(self.panel_size > 0.0) {
            return Err(Error::Parse("panel_size must be positive".into()));
        }
        for p in &self.panels {
            if p.s == 0.0 {
                return Err(Error::Parse("s must be nonzero".into()));
            }
            for e in &p.elements {
                if let Element::GhostOf { of, .. } | Element::SGhostOf { of, .. } = e {
                    p.cycle_by_id(of)?;
                }
            }
        }
        Ok(())
    }
}
