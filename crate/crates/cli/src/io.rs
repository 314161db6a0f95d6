//! Text input records, spline JSON and CSV output.

use std::fs;
use std::path::Path;

use ph_biarc::{
    AnchorEnd, Error, PHQuinticArc, PreImage, Quaternion, SegmentKind, Spline, SplineBuilder, SplineSegmentRecord,
    StreamMode, Vec3,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteRecord {
    pub line: usize,
    pub u: Option<f64>,
    pub p: Vec3,
    pub v: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecord {
    pub line: usize,
    pub p: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Records {
    Hermite(Vec<HermiteRecord>),
    Points(Vec<PointRecord>),
}

/// Parses whitespace-separated records, one per line; `#` starts a comment.
///
/// Hermite records are `[u] px py pz vx vy vz`, point records `px py pz`.
/// Either all Hermite records carry `u` or none does.
pub fn parse_records(text: &str, mode: StreamMode, source: &str) -> Result<Records, CliError> {
    let err = |line: usize, message: String| CliError::Parse { path: source.to_string(), line, message };
    let mut hermite = Vec::new();
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let values = content
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(err(line, format!("'{tok}' is not a finite number"))),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let v3 = |s: &[f64]| Vec3::new(s[0], s[1], s[2]);
        match mode {
            StreamMode::Points => {
                if values.len() != 3 {
                    return Err(err(line, format!("expected 3 numbers, found {}", values.len())));
                }
                points.push(PointRecord { line, p: v3(&values) });
            }
            StreamMode::Hermite => {
                let record = match values.len() {
                    6 => HermiteRecord { line, u: None, p: v3(&values[0..3]), v: v3(&values[3..6]) },
                    7 => HermiteRecord { line, u: Some(values[0]), p: v3(&values[1..4]), v: v3(&values[4..7]) },
                    n => return Err(err(line, format!("expected 6 or 7 numbers, found {n}"))),
                };
                if let Some(first) = hermite.first() {
                    let first: &HermiteRecord = first;
                    if first.u.is_some() != record.u.is_some() {
                        return Err(err(line, "parameter column present on some records only".to_string()));
                    }
                }
                hermite.push(record);
            }
        }
    }
    Ok(match mode {
        StreamMode::Hermite => Records::Hermite(hermite),
        StreamMode::Points => Records::Points(points),
    })
}

fn push_error(builder: &SplineBuilder, line: usize, source: Error) -> CliError {
    match source {
        Error::ZeroChord { .. } | Error::ZeroDerivative { .. } | Error::NonIncreasingKnot { .. } => {
            CliError::Input { line, source }
        }
        source => CliError::Solver { segment: builder.segments().len(), source },
    }
}

/// Streams parsed records through a builder and returns the finished spline.
pub fn build_spline(records: &Records) -> Result<Spline, CliError> {
    match records {
        Records::Hermite(recs) => {
            let mut b = SplineBuilder::hermite();
            for r in recs {
                b.push_hermite(r.p, r.v, r.u).map_err(|e| push_error(&b, r.line, e))?;
            }
            Ok(b.into_spline())
        }
        Records::Points(recs) => {
            let mut b = SplineBuilder::points();
            for r in recs {
                b.push_point(r.p).map_err(|e| push_error(&b, r.line, e))?;
            }
            let last = recs.last().map_or(0, |r| r.line);
            b.finalize().map_err(|e| push_error(&b, last, e))?;
            Ok(b.into_spline())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ModeDoc {
    Hermite,
    Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindDoc {
    SingleArc,
    Biarc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AnchorEndDoc {
    Start,
    End,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ArcDoc {
    u_start: f64,
    u_end: f64,
    preimage: [[f64; 4]; 3],
    anchor: [f64; 3],
    anchor_end: AnchorEndDoc,
    control_points: [[f64; 3]; 6],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SegmentDoc {
    kind: KindDoc,
    arcs: Vec<ArcDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SplineDoc {
    mode: ModeDoc,
    knots: Vec<f64>,
    segments: Vec<SegmentDoc>,
}

fn arc_doc(arc: &PHQuinticArc) -> ArcDoc {
    let pre = arc.preimage();
    ArcDoc {
        u_start: arc.u_start(),
        u_end: arc.u_end(),
        preimage: [pre.c0.to_array(), pre.c1.to_array(), pre.c2.to_array()],
        anchor: arc.anchor().to_array(),
        anchor_end: match arc.anchor_end() {
            AnchorEnd::Start => AnchorEndDoc::Start,
            AnchorEnd::End => AnchorEndDoc::End,
        },
        control_points: arc.control_polygon().points.map(|p| p.to_array()),
    }
}

/// Serializes a spline. Floats use the shortest representation that parses
/// back to the same double.
pub fn spline_to_json(spline: &Spline) -> String {
    let doc = SplineDoc {
        mode: match spline.mode {
            StreamMode::Hermite => ModeDoc::Hermite,
            StreamMode::Points => ModeDoc::Points,
        },
        knots: spline.knots(),
        segments: spline
            .segments
            .iter()
            .map(|s| SegmentDoc {
                kind: match s.kind {
                    SegmentKind::SingleArc => KindDoc::SingleArc,
                    SegmentKind::Biarc => KindDoc::Biarc,
                },
                arcs: s.arcs.iter().map(arc_doc).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("spline documents always serialize")
}

/// Rebuilds a spline from its JSON form. The stored control points are not
/// trusted; they are recomputed from the pre-image and anchor.
pub fn spline_from_json(text: &str, source: &str) -> Result<Spline, CliError> {
    let json_err = |message: String| CliError::Json { path: source.to_string(), message };
    let doc: SplineDoc = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    let mut segments = Vec::with_capacity(doc.segments.len());
    for (j, seg) in doc.segments.iter().enumerate() {
        if seg.arcs.is_empty() {
            return Err(json_err(format!("segment {j} has no arcs")));
        }
        let arcs = seg
            .arcs
            .iter()
            .map(|a| {
                let [c0, c1, c2] = a.preimage.map(Quaternion::from);
                let end = match a.anchor_end {
                    AnchorEndDoc::Start => AnchorEnd::Start,
                    AnchorEndDoc::End => AnchorEnd::End,
                };
                PHQuinticArc::new(PreImage::new(c0, c1, c2), Vec3::from(a.anchor), end, a.u_start, a.u_end)
                    .map_err(|source| CliError::Solver { segment: j, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let kind = match seg.kind {
            KindDoc::SingleArc => SegmentKind::SingleArc,
            KindDoc::Biarc => SegmentKind::Biarc,
        };
        segments.push(SplineSegmentRecord { kind, arcs, source: (j, j + 1) });
    }
    let mode = match doc.mode {
        ModeDoc::Hermite => StreamMode::Hermite,
        ModeDoc::Points => StreamMode::Points,
    };
    Ok(Spline::from_parts(mode, segments))
}

/// `(u, point)` samples, `per_arc` intervals on every arc, shared joints listed once.
pub fn sample_points(spline: &Spline, per_arc: usize) -> Vec<(f64, Vec3)> {
    let n = per_arc.max(1);
    let mut out = Vec::new();
    for (i, arc) in spline.arcs().enumerate() {
        let first = if i == 0 { 0 } else { 1 };
        for s in first..=n {
            let xi = s as f64 / n as f64;
            let u = arc.u_start() + xi * arc.interval_length();
            let u = if s == n { arc.u_end() } else { u };
            out.push((u, arc.eval_local(xi)));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub u: f64,
    pub arc_length: f64,
    pub kappa: f64,
}

/// Curvature against cumulative arc length. Every arc contributes both end
/// values, so each joint appears twice: left limit, then right limit.
pub fn sample_curvature(spline: &Spline, per_arc: usize) -> Result<Vec<CurvatureSample>, Error> {
    let n = per_arc.max(1);
    let mut out = Vec::new();
    let mut offset = 0.0;
    for arc in spline.arcs() {
        for s in 0..=n {
            let u = if s == n { arc.u_end() } else { arc.u_start() + arc.interval_length() * s as f64 / n as f64 };
            let arc_length = offset + arc.arc_length(arc.u_start(), u)?;
            out.push(CurvatureSample { u, arc_length, kappa: arc.curvature(u)? });
        }
        offset += arc.total_length();
    }
    Ok(out)
}

pub fn points_csv(samples: &[(f64, Vec3)]) -> String {
    let mut out = String::from("u,x,y,z\n");
    for (u, p) in samples {
        out.push_str(&format!("{u},{},{},{}\n", p.x, p.y, p.z));
    }
    out
}

pub fn curvature_csv(samples: &[CurvatureSample]) -> String {
    let mut out = String::from("u,arclength,kappa\n");
    for s in samples {
        out.push_str(&format!("{},{},{}\n", s.u, s.arc_length, s.kappa));
    }
    out
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
