use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use twistor_holonomy::density::{coverage, iterate_wk, random_word_orbit, SphereGrid};
use twistor_holonomy::holonomy::{
    catalog_verify, classify_finite, close_group, halved_triplets, orbit as orbit_of, Catalog, ClosureStatus,
};
use twistor_holonomy::linalg::Vector;
use twistor_holonomy::poly::{
    analyze, cos_minpoly, has_b_structure, is_cyclotomic, minimal_poly_zeta, numeric_zeta, symmetric_substitute,
    RootOfUnityVerdict, Verdict,
};
use twistor_holonomy::rotation::{
    build_pair, check_axes_independent, check_trace_symmetry, trace_product_exact, trace_product_numeric, CosPhi,
    Mode, Theta, Triplet,
};
use twistor_holonomy::scalar::{parse_angle, parse_mq};
use twistor_holonomy::tables::{regenerate, GoldenTables};
use twistor_holonomy::transport::{build_connection, holonomy_of_curve, transport as transport_along, NormalPolygonalCurve};
use twistor_holonomy::{Error, Mat3, RationalPoly, Rotation3, Vec4};

use crate::{CliError, Globals, Method, Report, TripletArgs};

/// Tolerance for exact-vs-numeric and transport-vs-word cross-checks.
const CHECK_TOL: f64 = 1e-9;

fn parse_triplet(t: &TripletArgs) -> Result<Triplet, CliError> {
    let phi = CosPhi::parse(&t.phi)?;
    if t.numeric {
        Ok(Triplet::numeric(Theta::parse(&t.tx, true)?, Theta::parse(&t.ty, true)?, phi))
    } else {
        Ok(Triplet::exact(parse_angle(&t.tx)?, parse_angle(&t.ty)?, phi)?)
    }
}

fn triplet_inputs(t: &TripletArgs) -> Value {
    json!({"tx": t.tx, "ty": t.ty, "phi": t.phi, "numeric": t.numeric})
}

fn with_inputs(base: Value, extra: Value) -> Value {
    let mut base = base;
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn matrix(m: &Mat3) -> Value {
    json!(m.to_rows_f64())
}

fn poly_json(p: &RationalPoly) -> Value {
    json!({
        "text": p.to_string(),
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn root_json(r: &RootOfUnityVerdict) -> Value {
    match r {
        RootOfUnityVerdict::RootOfUnity(n) => json!({"root_of_unity": true, "order": n}),
        RootOfUnityVerdict::NotRootOfUnity => json!({"root_of_unity": false, "order": null}),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::InfiniteCertified => json!({"kind": "InfiniteCertified", "order": null}),
        Verdict::FiniteCandidate(n) => json!({"kind": "FiniteCandidate", "order": n}),
        Verdict::Inconclusive => json!({"kind": "Inconclusive", "order": null}),
    }
}

fn axis_json(r: &Rotation3) -> Value {
    match r.axis_angle() {
        Ok((axis, angle)) => json!({"axis": axis.to_vec_f64(), "angle": angle}),
        Err(_) => Value::Null,
    }
}

pub fn pair(t: &TripletArgs) -> Result<Report, CliError> {
    let triplet = parse_triplet(t)?;
    let pair = build_pair::<f64>(&triplet);
    let numeric = trace_product_numeric(&triplet);
    let exact = match triplet.mode {
        Mode::Exact => Some(trace_product_exact(&triplet)?),
        Mode::Numeric => None,
    };
    let consistent = exact.as_ref().is_none_or(|e| (e.to_f64() - numeric).abs() < CHECK_TOL);
    let axes_independent = match check_axes_independent(&pair) {
        Ok(b) => json!(b),
        Err(Error::ExcludedCase(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let result = json!({
        "triplet": triplet.to_string(),
        "mode": format!("{:?}", triplet.mode),
        "cx": matrix(&pair.cx.0),
        "cy": matrix(&pair.cy.0),
        "product_xy": matrix(&pair.product_xy().0),
        "trace_exact": exact.as_ref().map(|e| e.to_string()),
        "trace_exact_value": exact.as_ref().map(|e| e.to_f64()),
        "trace_numeric": numeric,
        "axis_xy": axis_json(&pair.product_xy()),
        "axis_yx": axis_json(&pair.product_yx()),
        "trace_symmetry": check_trace_symmetry(&pair),
        "axes_independent": axes_independent,
    });
    Ok(Report {
        inputs: triplet_inputs(t),
        result,
        consistent,
    })
}

pub fn verdict(t: &TripletArgs) -> Result<Report, CliError> {
    let triplet = parse_triplet(t)?;
    let exact = match triplet.mode {
        Mode::Exact => Ok(triplet.clone()),
        Mode::Numeric => triplet.to_exact(),
    };
    let result = match exact.and_then(|e| analyze(&e)) {
        Ok(a) => json!({
            "triplet": triplet.to_string(),
            "trace": a.trace.to_string(),
            "char_poly_a": a.char_poly.a().to_string(),
            "f_zeta": poly_json(&a.min_poly),
            "root": root_json(&a.root),
            "verdict": verdict_json(&a.verdict),
            "reason": null,
        }),
        Err(e @ (Error::NotInField(_) | Error::UnsupportedAngle(_) | Error::MixedRadicals(_) | Error::OutOfDomain(_))) => {
            json!({
                "triplet": triplet.to_string(),
                "trace": null,
                "char_poly_a": null,
                "f_zeta": null,
                "root": null,
                "verdict": verdict_json(&Verdict::Inconclusive),
                "reason": e.to_string(),
            })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Report {
        inputs: triplet_inputs(t),
        result,
        consistent: true,
    })
}

pub fn minpoly(trace: Option<&str>, prime: Option<u64>) -> Result<Report, CliError> {
    if let Some(src) = trace {
        let tr = parse_mq(src)?;
        let f = minimal_poly_zeta(&tr)?;
        let root = is_cyclotomic(&f)?;
        let residual = f.eval_complex(numeric_zeta(tr.to_f64())).norm();
        return Ok(Report {
            inputs: json!({"trace": src, "prime": null}),
            result: json!({
                "trace": tr.to_string(),
                "f_zeta": poly_json(&f),
                "root": root_json(&root),
                "residual": residual,
            }),
            consistent: residual < CHECK_TOL,
        });
    }
    let n = prime.ok_or_else(|| CliError::Usage("give --trace or --prime".into()))?;
    let big_f = cos_minpoly(n)?;
    let f = symmetric_substitute(&big_f);
    let root = is_cyclotomic(&f)?;
    // ζ for the triplet (π/2, 2π/n, π/2): the trace is cos(2π/n).
    let tr = (2.0 * std::f64::consts::PI / n as f64).cos();
    let residual = f.eval_complex(numeric_zeta(tr)).norm();
    let structure = has_b_structure(&big_f);
    let palindromic = f.is_palindromic();
    Ok(Report {
        inputs: json!({"trace": null, "prime": n}),
        result: json!({
            "cos_minpoly": poly_json(&big_f),
            "b_structure": structure,
            "f_zeta": poly_json(&f),
            "palindromic": palindromic,
            "root": root_json(&root),
            "residual": residual,
        }),
        consistent: residual < CHECK_TOL && structure && palindromic,
    })
}

fn status_json(s: &ClosureStatus) -> Value {
    match s {
        ClosureStatus::Complete(n) => json!({"complete": true, "order": n, "cap": null}),
        ClosureStatus::CapExceeded(c) => json!({"complete": false, "order": null, "cap": c}),
    }
}

pub fn orbit(g: &Globals, t: &TripletArgs, point: u8) -> Result<Report, CliError> {
    let triplet = parse_triplet(t)?;
    let pair = build_pair::<f64>(&triplet);
    let group = close_group(&pair.generators(), g.cap, g.tol);
    let label = classify_finite(&group).ok();
    let p = Vector::basis(point as usize - 1);
    let orb = orbit_of(&group, &p)?;
    let result = json!({
        "triplet": triplet.to_string(),
        "closure": status_json(&group.status),
        "group": label.map(|l| l.to_string()),
        "orbit_size": orb.len(),
        "points": orb.points.iter().map(|p| p.to_vec_f64()).collect::<Vec<_>>(),
    });
    let consistent = group.order().is_none_or(|n| n % orb.len() == 0);
    Ok(Report {
        inputs: with_inputs(triplet_inputs(t), json!({"point": point, "cap": g.cap, "tol": g.tol})),
        result,
        consistent,
    })
}

pub struct DensityParams {
    pub res: f64,
    pub method: Method,
    pub max_len: usize,
    pub count: usize,
    pub k: usize,
    pub samples: usize,
    pub csv: Option<PathBuf>,
}

pub fn density(g: &Globals, t: &TripletArgs, d: DensityParams) -> Result<Report, CliError> {
    if !(d.res > 0.0 && d.res <= 90.0) {
        return Err(CliError::Usage("--res must be in (0, 90]".into()));
    }
    let triplet = parse_triplet(t)?;
    let pair = build_pair::<f64>(&triplet);
    let (points, report) = match d.method {
        Method::Words => {
            let seed = g
                .seed
                .ok_or_else(|| CliError::Usage("density with random words needs --seed".into()))?;
            let orb = random_word_orbit(&pair, d.max_len, d.count, seed);
            let rep = coverage(&orb.points, &SphereGrid::new(d.res)).with_words(d.max_len, seed);
            (orb, rep)
        }
        Method::Wk => {
            let orb = iterate_wk(&pair, &Vector::basis(0), d.k, d.samples);
            let rep = coverage(&orb.points, &SphereGrid::new(d.res));
            (orb, rep)
        }
    };
    if let Some(path) = &d.csv {
        let file = File::create(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        points
            .write_csv(BufWriter::new(file))
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    let method = match d.method {
        Method::Words => "words",
        Method::Wk => "wk",
    };
    Ok(Report {
        inputs: with_inputs(
            triplet_inputs(t),
            json!({
                "res": d.res, "method": method, "max_len": d.max_len, "count": d.count,
                "k": d.k, "samples": d.samples, "seed": g.seed,
                "csv": d.csv.as_ref().map(|p| p.display().to_string()),
            }),
        ),
        result: json!({"triplet": triplet.to_string(), "coverage": report}),
        consistent: true,
    })
}

fn parse_vec4(src: &str) -> Result<Vec4, CliError> {
    let parts: Vec<f64> = src
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad 4-vector {src:?}")))?;
    let arr: [f64; 4] = parts
        .try_into()
        .map_err(|_| CliError::Usage(format!("4-vector needs 4 components: {src:?}")))?;
    Ok(Vector(arr))
}

/// `∏ C_axis^k` in curve order.
fn word_product(cx: &Rotation3, cy: &Rotation3, curve: &NormalPolygonalCurve) -> Rotation3 {
    use twistor_holonomy::transport::Axis;
    curve.moves().iter().fold(Rotation3::identity(), |acc, &(axis, k)| {
        let c = match axis {
            Axis::X => cx,
            Axis::Y => cy,
        };
        let base = if k < 0 { c.inverse() } else { *c };
        acc.compose(&twistor_holonomy::rotation::Rotation3(base.0.pow(k.unsigned_abs())))
    })
}

pub fn transport(t: &TripletArgs, curve: &str, bx: Option<&str>, by: Option<&str>) -> Result<Report, CliError> {
    let triplet = parse_triplet(t)?;
    let curve: NormalPolygonalCurve = curve.parse()?;
    let bx = bx.map(parse_vec4).transpose()?;
    let by = by.map(parse_vec4).transpose()?;
    let pair = build_pair::<f64>(&triplet);
    let conn = build_connection(&pair.cx, &pair.cy, bx.as_ref(), by.as_ref())?;
    let frame = transport_along(&conn, &curve);
    let hol = holonomy_of_curve(&conn, &curve);
    let word = word_product(&pair.cx, &pair.cy, &curve);
    let diff = hol.0.max_abs_diff(&word.0);
    Ok(Report {
        inputs: with_inputs(
            triplet_inputs(t),
            json!({"curve": curve.to_string(), "bx": bx.map(|b| b.to_vec_f64()), "by": by.map(|b| b.to_vec_f64())}),
        ),
        result: json!({
            "triplet": triplet.to_string(),
            "p1": conn.p1.0.to_rows_f64(),
            "p2": conn.p2.0.to_rows_f64(),
            "transport": frame.0.to_rows_f64(),
            "holonomy": matrix(&hol.0),
            "word_product": matrix(&word.0),
            "max_abs_diff": diff,
        }),
        consistent: diff < CHECK_TOL,
    })
}

pub fn catalog(g: &Globals, id: Option<&str>, halved: bool) -> Result<Report, CliError> {
    let mut cat = Catalog::shipped();
    if let Some(id) = id {
        cat.entries.retain(|e| e.id == id);
        if cat.entries.is_empty() {
            return Err(CliError::Usage(format!("no catalog entry {id:?}")));
        }
    }
    let report = catalog_verify(&cat, g.cap, g.tol);
    let mut consistent = report.failures == 0;
    let mut result = json!({"catalog": report});
    if halved {
        let mut rows = Vec::new();
        let mut mismatches = 0;
        for h in halved_triplets(&cat) {
            let a = analyze(&h.triplet);
            let verdict = a.as_ref().map(|a| a.verdict).unwrap_or(Verdict::Inconclusive);
            let group = close_group(&build_pair::<f64>(&h.triplet).generators(), g.cap, g.tol);
            let ok = matches!(
                (verdict, group.status),
                (Verdict::InfiniteCertified, ClosureStatus::CapExceeded(_))
                    | (Verdict::FiniteCandidate(_), ClosureStatus::Complete(_))
            );
            mismatches += usize::from(!ok);
            rows.push(json!({
                "triplet": h.triplet.to_string(),
                "parents": h.parents,
                "trace": a.as_ref().ok().map(|a| a.trace.to_string()),
                "verdict": verdict_json(&verdict),
                "closure": status_json(&group.status),
                "consistent": ok,
            }));
        }
        consistent &= mismatches == 0;
        result["halved"] = json!({"entries": rows, "mismatches": mismatches});
    }
    Ok(Report {
        inputs: json!({"id": id, "halved": halved, "cap": g.cap, "tol": g.tol}),
        result,
        consistent,
    })
}

pub fn tables(golden: Option<&Path>) -> Result<Report, CliError> {
    let tables = match golden {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            GoldenTables::parse(&text)?
        }
        None => GoldenTables::shipped(),
    };
    let report = regenerate(&tables);
    let consistent = report.pass();
    Ok(Report {
        inputs: json!({"golden": golden.map(|p| p.display().to_string())}),
        result: json!({"pass": consistent, "tables": report}),
        consistent,
    })
}
