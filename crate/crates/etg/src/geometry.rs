//! Geometry export: the three conserved cylinders, the two pencil
//! hyperboloids selected by the phase split, both curve components, and the
//! generator segments walked by the involution pair, as a JSON bundle plus
//! optional OBJ meshes.

use std::path::Path;

use euler_top::curve::{curve_point, mirror_state};
use euler_top::dynamics::{cylinders, DiagonalQuadric, State};
use euler_top::involution::ruling_directions;
use euler_top::pencil::lambda_from_nu;
use euler_top::pencil::pencil_quadric;
use euler_top::Error;

use crate::config::RunConfig;
use crate::emit::{arr, sci, state_arr};
use crate::evolve::involution_walk;
use crate::scene::Scene;
use crate::CliError;

pub struct MeshOptions {
    pub enabled: bool,
    /// Samples along the two surface parameters.
    pub resolution: [u32; 2],
    /// Clip range for the unbounded parameter (ruling, extrusion, or
    /// hyperbola arc).
    pub v_range: [f64; 2],
}

struct Bundle {
    nu: f64,
    nu1: f64,
    nu2: f64,
    lambda1: f64,
    lambda2: f64,
    quadrics: Vec<(String, DiagonalQuadric)>,
    curves: Vec<(&'static str, Vec<State>)>,
    generators: Vec<(String, State, State)>,
}

const CURVE_SAMPLES: usize = 256;

fn build(scene: &Scene, config: &RunConfig) -> Result<Bundle, Error> {
    let nu1 = scene.nu1(config);
    let nu2 = scene.nu - nu1;
    let lambda1 = lambda_from_nu(nu1, &scene.f, scene.case, scene.chart.k)?;
    let lambda2 = lambda_from_nu(nu2, &scene.f, scene.case, scene.chart.k)?;
    let h1 = pencil_quadric(lambda1, &scene.f, &scene.delta, scene.case)?;
    let h2 = pencil_quadric(lambda2, &scene.f, &scene.delta, scene.case)?;
    let merged =
        (lambda1 - lambda2).abs() <= 1e-9 * lambda1.abs().max(lambda2.abs()).max(1.0);

    let cyl = cylinders(&scene.f, &scene.delta)?;
    let mut quadrics = vec![
        ("C1".to_string(), cyl[0]),
        ("C2".to_string(), cyl[1]),
        ("C3".to_string(), cyl[2]),
    ];
    if merged {
        quadrics.push(("H1=H2".to_string(), h1.quadric));
    } else {
        quadrics.push(("H1".to_string(), h1.quadric));
        quadrics.push(("H2".to_string(), h2.quadric));
    }

    let two_k = 2.0 * scene.chart.periods.real;
    let mut plus = Vec::with_capacity(CURVE_SAMPLES + 1);
    let mut minus = Vec::with_capacity(CURVE_SAMPLES + 1);
    for j in 0..=CURVE_SAMPLES {
        let u = -two_k + 2.0 * two_k * (j as f64) / (CURVE_SAMPLES as f64);
        let p = curve_point(&scene.chart, u);
        plus.push(p);
        minus.push(mirror_state(&p, scene.case));
    }
    let curves = vec![("curve_plus", plus), ("curve_minus", minus)];

    let (label1, label2) = if merged {
        ("H1=H2", "H1=H2")
    } else {
        ("H1", "H2")
    };
    let (states, mids) = involution_walk(scene, nu1, config.steps)?;
    let mut generators = Vec::with_capacity(2 * mids.len());
    for i in 0..mids.len() {
        generators.push((label1.to_string(), states[i], mids[i]));
        generators.push((label2.to_string(), mids[i], states[i + 1]));
    }

    Ok(Bundle {
        nu: scene.nu,
        nu1,
        nu2,
        lambda1,
        lambda2,
        quadrics,
        curves,
        generators,
    })
}

fn bundle_json(b: &Bundle) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"nu\": {},\n", sci(b.nu)));
    out.push_str(&format!("  \"nu1\": {},\n", sci(b.nu1)));
    out.push_str(&format!("  \"nu2\": {},\n", sci(b.nu2)));
    out.push_str(&format!("  \"lambda1\": {},\n", sci(b.lambda1)));
    out.push_str(&format!("  \"lambda2\": {},\n", sci(b.lambda2)));

    out.push_str("  \"quadrics\": [\n");
    for (i, (label, q)) in b.quadrics.iter().enumerate() {
        let comma = if i + 1 < b.quadrics.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"label\": \"{}\", \"coefficients\": {}}}{}\n",
            label,
            arr(&[q.c1, q.c2, q.c3, q.c0]),
            comma
        ));
    }
    out.push_str("  ],\n");

    out.push_str("  \"curves\": [\n");
    for (i, (label, points)) in b.curves.iter().enumerate() {
        let comma = if i + 1 < b.curves.len() { "," } else { "" };
        out.push_str(&format!("    {{\"label\": \"{}\", \"points\": [\n", label));
        for (j, p) in points.iter().enumerate() {
            let pc = if j + 1 < points.len() { "," } else { "" };
            out.push_str(&format!("      {}{}\n", state_arr(p), pc));
        }
        out.push_str(&format!("    ]}}{}\n", comma));
    }
    out.push_str("  ],\n");

    out.push_str("  \"generators\": [\n");
    for (i, (label, a, bb)) in b.generators.iter().enumerate() {
        let comma = if i + 1 < b.generators.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"label\": \"{}\", \"a\": {}, \"b\": {}}}{}\n",
            label,
            state_arr(a),
            state_arr(bb),
            comma
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

struct ObjWriter {
    text: String,
    vertices: usize,
}

impl ObjWriter {
    fn new() -> Self {
        ObjWriter {
            text: String::new(),
            vertices: 0,
        }
    }

    fn object(&mut self, name: &str) {
        self.text.push_str(&format!("o {name}\n"));
    }

    fn vertex(&mut self, p: [f64; 3]) -> usize {
        self.text
            .push_str(&format!("v {} {} {}\n", sci(p[0]), sci(p[1]), sci(p[2])));
        self.vertices += 1;
        self.vertices
    }

    fn quad(&mut self, a: usize, b: usize, c: usize, d: usize) {
        self.text.push_str(&format!("f {a} {b} {c} {d}\n"));
    }

    fn polyline(&mut self, indices: &[usize]) {
        let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        self.text.push_str(&format!("l {}\n", parts.join(" ")));
    }
}

/// Grid faces for `nu x nv` vertices laid out row-major in u, optionally
/// wrapping the u direction.
fn grid_faces(w: &mut ObjWriter, base: usize, nu: usize, nv: usize, wrap_u: bool) {
    let rows = if wrap_u { nu } else { nu - 1 };
    for i in 0..rows {
        let i2 = (i + 1) % nu;
        for j in 0..nv - 1 {
            let a = base + i * nv + j;
            let b = base + i2 * nv + j;
            let c = base + i2 * nv + j + 1;
            let d = base + i * nv + j + 1;
            w.quad(a, b, c, d);
        }
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Tessellate a doubly ruled pencil member from the ruling through each
/// base-curve point: p(u, v) = b(u) + v * d(u).
fn ruled_mesh(
    w: &mut ObjWriter,
    name: &str,
    q: &DiagonalQuadric,
    scene: &Scene,
    opts: &MeshOptions,
) -> Result<(), Error> {
    let (nu_s, nv_s) = (opts.resolution[0] as usize, opts.resolution[1] as usize);
    let two_k = 2.0 * scene.chart.periods.real;
    w.object(name);
    let base = w.vertices + 1;
    let mut prev: Option<[f64; 3]> = None;
    for i in 0..nu_s {
        let u = -two_k + 2.0 * two_k * (i as f64) / (nu_s as f64);
        let b = curve_point(&scene.chart, u);
        let (dp, _) = ruling_directions(&b, q)?;
        let mut d = dp.as_array();
        if let Some(p) = prev {
            if dot3(d, p) < 0.0 {
                d = [-d[0], -d[1], -d[2]];
            }
        }
        prev = Some(d);
        for j in 0..nv_s {
            let t = (j as f64) / ((nv_s - 1) as f64);
            let v = opts.v_range[0] + t * (opts.v_range[1] - opts.v_range[0]);
            let ba = b.as_array();
            w.vertex([ba[0] + v * d[0], ba[1] + v * d[1], ba[2] + v * d[2]]);
        }
    }
    grid_faces(w, base, nu_s, nv_s, true);
    Ok(())
}

fn place(axis: usize, axis_val: f64, c1: usize, v1: f64, c2: usize, v2: f64) -> [f64; 3] {
    let mut p = [0.0; 3];
    p[axis] = axis_val;
    p[c1] = v1;
    p[c2] = v2;
    p
}

/// A conserved cylinder: elliptic or hyperbolic cross-section extruded
/// along the axis of its vanishing coefficient.
fn cylinder_mesh(w: &mut ObjWriter, name: &str, q: &DiagonalQuadric, opts: &MeshOptions) {
    let c = [q.c1, q.c2, q.c3];
    let axis = c
        .iter()
        .position(|v| *v == 0.0)
        .expect("cylinder has a vanishing coefficient");
    let (ia, ib) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (n_arc, n_ext) = (opts.resolution[0] as usize, opts.resolution[1] as usize);
    let (lo, hi) = (opts.v_range[0], opts.v_range[1]);

    if c[ia] * c[ib] > 0.0 {
        // same-sign cross terms: ellipse c_ia*x^2 + c_ib*y^2 = -c0
        let ra = (-q.c0 / c[ia]).sqrt();
        let rb = (-q.c0 / c[ib]).sqrt();
        w.object(name);
        let base = w.vertices + 1;
        for i in 0..n_arc {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / (n_arc as f64);
            for j in 0..n_ext {
                let t = lo + (hi - lo) * (j as f64) / ((n_ext - 1) as f64);
                w.vertex(place(axis, t, ia, ra * th.cos(), ib, rb * th.sin()));
            }
        }
        grid_faces(w, base, n_arc, n_ext, true);
    } else {
        // mixed signs: hyperbola with two branches along the coefficient
        // whose sign matches the right-hand side
        let rhs = -q.c0;
        let (io, is) = if c[ia] * rhs > 0.0 { (ia, ib) } else { (ib, ia) };
        let ro = (rhs / c[io]).sqrt();
        let rs = (-rhs / c[is]).sqrt();
        for (branch, sign) in [("plus", 1.0), ("minus", -1.0)] {
            w.object(&format!("{name}_{branch}"));
            let base = w.vertices + 1;
            for i in 0..n_arc {
                let s = lo + (hi - lo) * (i as f64) / ((n_arc - 1) as f64);
                for j in 0..n_ext {
                    let t = lo + (hi - lo) * (j as f64) / ((n_ext - 1) as f64);
                    w.vertex(place(
                        axis,
                        t,
                        io,
                        sign * ro * s.cosh(),
                        is,
                        rs * s.sinh(),
                    ));
                }
            }
            grid_faces(w, base, n_arc, n_ext, false);
        }
    }
}

fn write_meshes(
    b: &Bundle,
    scene: &Scene,
    opts: &MeshOptions,
    out_dir: &Path,
) -> Result<Vec<String>, CliError> {
    let mut written = Vec::new();
    for (label, q) in &b.quadrics {
        let mut w = ObjWriter::new();
        let name = label.replace('=', "");
        if [q.c1, q.c2, q.c3].contains(&0.0) {
            cylinder_mesh(&mut w, &name, q, opts);
        } else {
            ruled_mesh(&mut w, &name, q, scene, opts)?;
        }
        let file = format!("mesh_{name}.obj");
        std::fs::write(out_dir.join(&file), w.text).map_err(CliError::from)?;
        written.push(file);
    }

    let mut w = ObjWriter::new();
    for (label, points) in &b.curves {
        w.object(label);
        let indices: Vec<usize> = points.iter().map(|p| w.vertex(p.as_array())).collect();
        w.polyline(&indices);
    }
    std::fs::write(out_dir.join("curves.obj"), w.text).map_err(CliError::from)?;
    written.push("curves.obj".to_string());

    let mut w = ObjWriter::new();
    w.object("generators");
    for (_, a, bb) in &b.generators {
        let ia = w.vertex(a.as_array());
        let ib = w.vertex(bb.as_array());
        w.polyline(&[ia, ib]);
    }
    std::fs::write(out_dir.join("generators.obj"), w.text).map_err(CliError::from)?;
    written.push("generators.obj".to_string());
    Ok(written)
}

pub fn run(config: &RunConfig, out_dir: &Path, opts: &MeshOptions) -> Result<(), CliError> {
    if opts.resolution.iter().any(|r| *r < 2) {
        return Err(CliError::invalid("mesh resolution must be at least 2x2".into()));
    }
    if !(opts.v_range[0] < opts.v_range[1]) {
        return Err(CliError::invalid("v range must be increasing".into()));
    }
    let scene = Scene::from_config(config)?;
    let bundle = build(&scene, config)?;
    std::fs::create_dir_all(out_dir).map_err(CliError::from)?;
    std::fs::write(out_dir.join("config.json"), config.to_json()).map_err(CliError::from)?;
    std::fs::write(out_dir.join("geometry.json"), bundle_json(&bundle))
        .map_err(CliError::from)?;
    println!(
        "wrote geometry.json ({} quadrics, {} generator segments)",
        bundle.quadrics.len(),
        bundle.generators.len()
    );
    if opts.enabled {
        let files = write_meshes(&bundle, &scene, opts, out_dir)?;
        println!("wrote {} obj files", files.len());
    }
    Ok(())
}
