//! Deterministic SVG 1.1 output for `CT(n)` and `H(n)` figures.
//!
//! World coordinates are mapped onto the canvas by a uniform scale with the
//! y-axis flipped, fitted to the bounding box of all circles and marked
//! points plus the margin. Unbounded lines are clipped to the canvas.
//! Numbers are written with six decimals and attributes in a fixed order,
//! so a figure and style always produce the same bytes.

use std::fmt::Write as _;

use crate::ct::CtFigure;
use crate::geom::{Circle, Line, Point, Rect, Tolerance};
use crate::haga::HagaFigure;
use crate::{Error, Result};

/// Radius in canvas units of a drawn point-circle.
pub const DOT_RADIUS: f64 = 3.0;
/// Radius in canvas units of a point marker.
pub const MARKER_RADIUS: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderStyle {
    pub stroke_width: f64,
    /// Draw the names of marked points.
    pub labels: bool,
    pub margin: f64,
    pub width: f64,
    pub height: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 1.5,
            labels: true,
            margin: 24.0,
            width: 480.0,
            height: 480.0,
        }
    }
}

impl RenderStyle {
    /// A style with positive, finite dimensions and nonnegative margin
    /// leaving room to draw.
    pub fn new(
        stroke_width: f64,
        labels: bool,
        margin: f64,
        width: f64,
        height: f64,
    ) -> Result<RenderStyle> {
        let style = RenderStyle {
            stroke_width,
            labels,
            margin,
            width,
            height,
        };
        style.validate()?;
        Ok(style)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.stroke_width) && positive(self.width) && positive(self.height)) {
            return Err(Error::domain(
                "stroke width and canvas size must be positive",
            ));
        }
        if !(self.margin.is_finite()
            && self.margin >= 0.0
            && 2.0 * self.margin < self.width.min(self.height))
        {
            return Err(Error::domain(
                "margin must be nonnegative and leave room on the canvas",
            ));
        }
        Ok(())
    }
}

/// World-to-canvas map `(x, y) ↦ (ox + s·x, oy − s·y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub scale: f64,
    pub offset_x: f64,
    pub offset_y: f64,
}

impl Transform {
    fn fit(bounds: Rect, style: &RenderStyle) -> Transform {
        let w = (bounds.max.x - bounds.min.x).max(1e-9);
        let h = (bounds.max.y - bounds.min.y).max(1e-9);
        let avail_w = (style.width - 2.0 * style.margin).max(1.0);
        let avail_h = (style.height - 2.0 * style.margin).max(1.0);
        let scale = (avail_w / w).min(avail_h / h);
        let mid = bounds.min.midpoint(bounds.max);
        Transform {
            scale,
            offset_x: 0.5 * style.width - scale * mid.x,
            offset_y: 0.5 * style.height + scale * mid.y,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.offset_x + self.scale * p.x,
            self.offset_y - self.scale * p.y,
        )
    }

    pub fn invert(&self, q: Point) -> Point {
        Point::new(
            (q.x - self.offset_x) / self.scale,
            (self.offset_y - q.y) / self.scale,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Line,
    Circle,
    /// A point-circle, drawn as a filled dot.
    Dot,
    Marker,
    Polygon,
    Text,
}

/// A drawn element in canvas coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Line {
        class: String,
        from: Point,
        to: Point,
    },
    Circle {
        class: String,
        center: Point,
        radius: f64,
        dashed: bool,
    },
    Dot {
        class: String,
        center: Point,
    },
    Marker {
        name: String,
        at: Point,
    },
    Polygon {
        class: String,
        points: Vec<Point>,
    },
    Text {
        class: String,
        at: Point,
        content: String,
    },
}

impl Element {
    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Line { .. } => ElementKind::Line,
            Element::Circle { .. } => ElementKind::Circle,
            Element::Dot { .. } => ElementKind::Dot,
            Element::Marker { .. } => ElementKind::Marker,
            Element::Polygon { .. } => ElementKind::Polygon,
            Element::Text { .. } => ElementKind::Text,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgDocument {
    pub title: String,
    pub width: f64,
    pub height: f64,
    pub stroke_width: f64,
    pub transform: Transform,
    pub elements: Vec<Element>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl SvgDocument {
    pub fn count(&self, kind: ElementKind) -> usize {
        self.elements.iter().filter(|e| e.kind() == kind).count()
    }

    /// Elements with the given class attribute.
    pub fn with_class<'a>(&'a self, class: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
        self.elements.iter().filter(move |e| match e {
            Element::Line { class: c, .. }
            | Element::Circle { class: c, .. }
            | Element::Dot { class: c, .. }
            | Element::Polygon { class: c, .. }
            | Element::Text { class: c, .. } => c == class,
            Element::Marker { .. } => false,
        })
    }

    /// SVG text: UTF-8, LF line endings, attributes in a fixed order.
    pub fn to_svg_string(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
            num(self.width),
            num(self.height),
            num(self.width),
            num(self.height)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(
            out,
            "<g fill=\"none\" stroke=\"black\" stroke-width=\"{}\">",
            num(self.stroke_width)
        );
        for element in &self.elements {
            match element {
                Element::Line { class, from, to } => {
                    let _ = writeln!(
                        out,
                        "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        num(from.x),
                        num(from.y),
                        num(to.x),
                        num(to.y)
                    );
                }
                Element::Circle {
                    class,
                    center,
                    radius,
                    dashed,
                } => {
                    let dash = if *dashed {
                        " stroke-dasharray=\"6 4\""
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        out,
                        "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"{dash}/>",
                        num(center.x),
                        num(center.y),
                        num(*radius)
                    );
                }
                Element::Dot { class, center } => {
                    let _ = writeln!(
                        out,
                        "<circle class=\"{class} point-circle\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
                        num(center.x),
                        num(center.y),
                        num(DOT_RADIUS)
                    );
                }
                Element::Marker { name, at } => {
                    let _ = writeln!(
                        out,
                        "<circle class=\"marker\" id=\"pt-{name}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\" stroke=\"none\"/>",
                        num(at.x),
                        num(at.y),
                        num(MARKER_RADIUS)
                    );
                }
                Element::Polygon { class, points } => {
                    let pts: Vec<String> = points
                        .iter()
                        .map(|p| format!("{},{}", num(p.x), num(p.y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "<polygon class=\"{class}\" points=\"{}\"/>",
                        pts.join(" ")
                    );
                }
                Element::Text { class, at, content } => {
                    let _ = writeln!(
                        out,
                        "<text class=\"{class}\" x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"12\" fill=\"black\" stroke=\"none\">{}</text>",
                        num(at.x),
                        num(at.y),
                        escape(content)
                    );
                }
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

/// Collects world-space items, then lays them out on the canvas.
struct Scene {
    style: RenderStyle,
    lines: Vec<(String, Line)>,
    segments: Vec<(String, Point, Point)>,
    polygons: Vec<(String, Vec<Point>)>,
    circles: Vec<(String, Circle, bool)>,
    markers: Vec<(String, Point)>,
    caption: Option<String>,
}

impl Scene {
    fn new(style: &RenderStyle) -> Scene {
        Scene {
            style: *style,
            lines: Vec::new(),
            segments: Vec::new(),
            polygons: Vec::new(),
            circles: Vec::new(),
            markers: Vec::new(),
            caption: None,
        }
    }

    fn line(&mut self, class: &str, line: Line) {
        self.lines.push((class.to_string(), line));
    }

    fn segment(&mut self, class: &str, p: Point, q: Point) {
        self.segments.push((class.to_string(), p, q));
    }

    fn circle(&mut self, class: &str, c: Circle) {
        self.circles.push((class.to_string(), c, false));
    }

    fn dashed_circle(&mut self, class: &str, c: Circle) {
        self.circles.push((class.to_string(), c, true));
    }

    fn mark(&mut self, name: &str, p: Point) {
        self.markers.push((name.to_string(), p));
    }

    fn bounds(&self) -> Rect {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point, r: f64| {
            min = Point::new(min.x.min(p.x - r), min.y.min(p.y - r));
            max = Point::new(max.x.max(p.x + r), max.y.max(p.y + r));
        };
        for (_, c, _) in &self.circles {
            grow(c.center, c.radius);
        }
        for (_, p) in &self.markers {
            grow(*p, 0.0);
        }
        for (_, pts) in &self.polygons {
            pts.iter().for_each(|p| grow(*p, 0.0));
        }
        for (_, p, q) in &self.segments {
            grow(*p, 0.0);
            grow(*q, 0.0);
        }
        if !min.x.is_finite() {
            return Rect {
                min: Point::new(-1.0, -1.0),
                max: Point::new(1.0, 1.0),
            };
        }
        Rect { min, max }
    }

    fn finish(self, title: String) -> SvgDocument {
        let style = self.style;
        let transform = Transform::fit(self.bounds(), &style);
        let canvas = Rect {
            min: transform.invert(Point::new(0.0, style.height)),
            max: transform.invert(Point::new(style.width, 0.0)),
        };
        let mut elements = Vec::new();
        for (class, points) in &self.polygons {
            elements.push(Element::Polygon {
                class: class.clone(),
                points: points.iter().map(|p| transform.apply(*p)).collect(),
            });
        }
        for (class, line) in &self.lines {
            if let Some((p, q)) = canvas.clip_line(line) {
                elements.push(Element::Line {
                    class: class.clone(),
                    from: transform.apply(p),
                    to: transform.apply(q),
                });
            }
        }
        for (class, p, q) in &self.segments {
            elements.push(Element::Line {
                class: class.clone(),
                from: transform.apply(*p),
                to: transform.apply(*q),
            });
        }
        for (class, c, dashed) in &self.circles {
            let center = transform.apply(c.center);
            if c.is_point() {
                elements.push(Element::Dot {
                    class: class.clone(),
                    center,
                });
            } else {
                elements.push(Element::Circle {
                    class: class.clone(),
                    center,
                    radius: c.radius * transform.scale,
                    dashed: *dashed,
                });
            }
        }
        for (name, p) in &self.markers {
            elements.push(Element::Marker {
                name: name.clone(),
                at: transform.apply(*p),
            });
        }
        if style.labels {
            for (name, p) in &self.markers {
                let at = transform.apply(*p) + Point::new(4.0, -4.0);
                elements.push(Element::Text {
                    class: "label".to_string(),
                    at,
                    content: name.clone(),
                });
            }
        }
        if let Some(caption) = self.caption {
            elements.push(Element::Text {
                class: "caption".to_string(),
                at: Point::new(style.margin, style.height - 0.5 * style.margin),
                content: caption,
            });
        }
        SvgDocument {
            title,
            width: style.width,
            height: style.height,
            stroke_width: style.stroke_width,
            transform,
            elements,
        }
    }
}

/// Short display of a parameter value: six decimals, trailing zeros dropped.
pub fn short_number(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn ct_param_label(fig: &CtFigure) -> String {
    match fig.n {
        crate::ct::CtParam::ZeroBar => "0\u{304}".to_string(),
        crate::ct::CtParam::Real(v) => short_number(v),
    }
}

fn ct_frame(scene: &mut Scene, fig: &CtFigure) {
    scene.line("k", fig.k);
    scene.line("l", fig.l);
}

fn ct_deltas(scene: &mut Scene, fig: &CtFigure) {
    scene.circle("delta1", fig.delta1);
    if fig.delta2 != fig.delta1 {
        scene.circle("delta2", fig.delta2);
    }
}

/// `CT(n)`: lines `k`, `l`, circles `Γ`, `Δ₁`, `Δ₂` (coincident circles once,
/// point-circles as dots), and the points `A`, `K`, `D₁`, `D₂`, `E₁`, `E₂`
/// where defined. With `with_companion`, `Γ̄` is added dashed.
pub fn render_ct(fig: &CtFigure, style: &RenderStyle, with_companion: bool) -> SvgDocument {
    let tol = Tolerance::default();
    let mut scene = Scene::new(style);
    ct_frame(&mut scene, fig);
    scene.circle("gamma", fig.gamma);
    ct_deltas(&mut scene, fig);
    if with_companion {
        scene.dashed_circle("gamma-bar", fig.companion().gamma_bar());
    }
    scene.mark("A", fig.origin);
    scene.mark("K", fig.gamma_foot);
    scene.mark("D1", fig.delta1_foot);
    scene.mark("D2", fig.delta2_foot);
    if let Ok(feet) = fig.tangent_feet(&tol) {
        scene.mark("E1", feet.e1);
        if let Some(e2) = feet.e2 {
            scene.mark("E2", e2);
        }
    }
    let mut title = format!("CT({})", ct_param_label(fig));
    if with_companion {
        let n_bar = match fig.companion().n_bar() {
            crate::ct::CtParam::ZeroBar => "0\u{304}".to_string(),
            crate::ct::CtParam::Real(v) => short_number(v),
        };
        let _ = write!(title, " with companion CT({n_bar})");
    }
    scene.finish(title)
}

/// `CT(n)` for a positive integer `n` with the congruent chain
/// `Γ₁ = Γ, …, Γₙ` in place of `Γ`.
pub fn render_ct_chain(fig: &CtFigure, style: &RenderStyle) -> Result<SvgDocument> {
    let chain = fig.chain()?;
    let mut scene = Scene::new(style);
    ct_frame(&mut scene, fig);
    for c in &chain {
        scene.circle("chain", *c);
    }
    ct_deltas(&mut scene, fig);
    scene.mark("A", fig.origin);
    scene.mark("D1", fig.delta1_foot);
    scene.mark("D2", fig.delta2_foot);
    Ok(scene.finish(format!("CT({}) chain", ct_param_label(fig))))
}

/// `H(n)`: the square, `Δ`, `Γ` (a dot for `0̄`), the crease clipped to the
/// canvas, the folded edge `EG`, the points `E`, `G`, `F`, `K`, `T` where
/// defined, and the case label as caption.
pub fn render_haga(fig: &HagaFigure, style: &RenderStyle) -> SvgDocument {
    let mut scene = Scene::new(style);
    scene
        .polygons
        .push(("square".to_string(), vec![fig.a, fig.b, fig.c, fig.d]));
    scene.line("crease", fig.crease);
    scene.segment("fold-edge", fig.e, fig.g);
    scene.circle("delta", fig.delta);
    scene.circle("gamma", fig.gamma);
    for (name, p) in [("A", fig.a), ("B", fig.b), ("C", fig.c), ("D", fig.d)] {
        scene.mark(name, p);
    }
    scene.mark("E", fig.e);
    scene.mark("G", fig.g);
    if let Some(f) = fig.f {
        scene.mark("F", f);
    }
    scene.mark("K", fig.gamma_foot);
    scene.mark("T", fig.contact);
    let param = match fig.n {
        crate::haga::HagaParam::ZeroBar => "0\u{304}".to_string(),
        crate::haga::HagaParam::Real(v) => short_number(v),
    };
    scene.caption = Some(format!("({}) H({param})", fig.case));
    scene.finish(format!("H({param})"))
}
