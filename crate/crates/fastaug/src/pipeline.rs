//! Probabilistic composition of transforms into reproducible pipelines,
//! plus the serialized config format.
//!
//! One sequential [`RngStream`] drives an application: first one gate
//! draw per transform, in list order and unconditionally (even for
//! `p = 1`), then each fired transform draws its own parameters in its
//! documented order. Pre-drawing the gates makes firing decisions
//! independent of every transform's parameters, so editing a parameter
//! (even one that changes a transform's draw count, like
//! `GridDistortion.num_steps`) never changes which transforms fire for
//! a given seed.

use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::geom::{self, D4Element};
use crate::photo;
use crate::rng::{entropy_seed, RngStream};
use crate::sampler::{BorderMode, BorderPolicy, Interpolation};
use crate::warp::{self, ElasticParams, GridDistortParams};
use serde_json::{json, Map, Value};

/// Every transform name accepted in configs, in canonical order.
pub const TRANSFORM_NAMES: [&str; 17] = [
    "HorizontalFlip",
    "VerticalFlip",
    "Rotate",
    "ShiftScaleRotate",
    "RandomCrop",
    "PadToSize",
    "Resize",
    "RandomSizedCrop",
    "D4",
    "GridDistortion",
    "ElasticTransform",
    "Brightness",
    "Contrast",
    "Gamma",
    "ShiftRGB",
    "ShiftHSV",
    "Grayscale",
];

/// A transform kind with its bound parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformKind {
    HorizontalFlip,
    VerticalFlip,
    Rotate {
        theta: f64,
        interp: Interpolation,
        border: BorderPolicy,
    },
    ShiftScaleRotate {
        dx: f64,
        dy: f64,
        scale: f64,
        theta: f64,
        interp: Interpolation,
        border: BorderPolicy,
    },
    RandomCrop {
        w: u32,
        h: u32,
    },
    PadToSize {
        target_w: u32,
        target_h: u32,
        border: BorderPolicy,
    },
    Resize {
        new_w: u32,
        new_h: u32,
        interp: Interpolation,
    },
    RandomSizedCrop {
        min_scale: f64,
        max_scale: f64,
        out_w: u32,
        out_h: u32,
        interp: Interpolation,
    },
    /// Draws one of the eight square symmetries uniformly (one draw).
    D4,
    GridDistortion {
        num_steps: u32,
        distort_limit: f64,
        interp: Interpolation,
        border: BorderPolicy,
    },
    ElasticTransform {
        alpha: f64,
        sigma: f64,
        interp: Interpolation,
        border: BorderPolicy,
    },
    Brightness {
        beta: f64,
    },
    Contrast {
        c: f64,
    },
    Gamma {
        g: f64,
    },
    ShiftRgb {
        dr: f64,
        dg: f64,
        db: f64,
    },
    ShiftHsv {
        dh: f64,
        ds: f64,
        dv: f64,
    },
    Grayscale,
}

impl TransformKind {
    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::HorizontalFlip => "HorizontalFlip",
            TransformKind::VerticalFlip => "VerticalFlip",
            TransformKind::Rotate { .. } => "Rotate",
            TransformKind::ShiftScaleRotate { .. } => "ShiftScaleRotate",
            TransformKind::RandomCrop { .. } => "RandomCrop",
            TransformKind::PadToSize { .. } => "PadToSize",
            TransformKind::Resize { .. } => "Resize",
            TransformKind::RandomSizedCrop { .. } => "RandomSizedCrop",
            TransformKind::D4 => "D4",
            TransformKind::GridDistortion { .. } => "GridDistortion",
            TransformKind::ElasticTransform { .. } => "ElasticTransform",
            TransformKind::Brightness { .. } => "Brightness",
            TransformKind::Contrast { .. } => "Contrast",
            TransformKind::Gamma { .. } => "Gamma",
            TransformKind::ShiftRgb { .. } => "ShiftRGB",
            TransformKind::ShiftHsv { .. } => "ShiftHSV",
            TransformKind::Grayscale => "Grayscale",
        }
    }

    /// Static parameter validation, run for the whole pipeline before
    /// any pixel work.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{}: {name} must be finite, got {v}",
                    self.name()
                )))
            }
        };
        match *self {
            TransformKind::HorizontalFlip
            | TransformKind::VerticalFlip
            | TransformKind::D4
            | TransformKind::Grayscale => Ok(()),
            TransformKind::Rotate { theta, .. } => finite("theta", theta),
            TransformKind::ShiftScaleRotate {
                dx,
                dy,
                scale,
                theta,
                ..
            } => {
                finite("dx", dx)?;
                finite("dy", dy)?;
                finite("theta", theta)?;
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "ShiftScaleRotate: scale must be positive, got {scale}"
                    )));
                }
                Ok(())
            }
            TransformKind::RandomCrop { w, h } => {
                if w == 0 || h == 0 {
                    return Err(Error::InvalidParameter(
                        "RandomCrop: window must be at least 1x1".into(),
                    ));
                }
                Ok(())
            }
            TransformKind::PadToSize {
                target_w, target_h, ..
            } => {
                if target_w == 0 || target_h == 0 {
                    return Err(Error::InvalidParameter(
                        "PadToSize: target must be at least 1x1".into(),
                    ));
                }
                Ok(())
            }
            TransformKind::Resize { new_w, new_h, .. } => {
                if new_w == 0 || new_h == 0 {
                    return Err(Error::InvalidParameter(
                        "Resize: target must be at least 1x1".into(),
                    ));
                }
                Ok(())
            }
            TransformKind::RandomSizedCrop {
                min_scale,
                max_scale,
                out_w,
                out_h,
                ..
            } => {
                if !(min_scale > 0.0 && min_scale <= max_scale && max_scale <= 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "RandomSizedCrop: scale range ({min_scale}, {max_scale}) \
                         must satisfy 0 < min <= max <= 1"
                    )));
                }
                if out_w == 0 || out_h == 0 {
                    return Err(Error::InvalidParameter(
                        "RandomSizedCrop: output must be at least 1x1".into(),
                    ));
                }
                Ok(())
            }
            TransformKind::GridDistortion {
                num_steps,
                distort_limit,
                interp,
                border,
            } => GridDistortParams {
                num_steps,
                distort_limit,
                interp,
                border,
            }
            .validate(),
            TransformKind::ElasticTransform {
                alpha,
                sigma,
                interp,
                border,
            } => ElasticParams {
                alpha,
                sigma,
                interp,
                border,
            }
            .validate(),
            TransformKind::Brightness { beta } => {
                if !(beta.is_finite() && beta >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "Brightness: beta must be >= 0, got {beta}"
                    )));
                }
                Ok(())
            }
            TransformKind::Contrast { c } => finite("c", c),
            TransformKind::Gamma { g } => {
                if !(g.is_finite() && g > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "Gamma: g must be > 0, got {g}"
                    )));
                }
                Ok(())
            }
            TransformKind::ShiftRgb { dr, dg, db } => {
                finite("dr", dr)?;
                finite("dg", dg)?;
                finite("db", db)
            }
            TransformKind::ShiftHsv { dh, ds, dv } => {
                finite("dh", dh)?;
                finite("ds", ds)?;
                finite("dv", dv)
            }
        }
    }

    /// Apply this transform to a bundle, drawing any random parameters
    /// from `rng` in the documented order.
    pub fn apply(&self, b: &SampleBundle, rng: &mut RngStream) -> Result<SampleBundle> {
        let photo_only =
            |image: crate::image::ImageBuffer| -> SampleBundle {
                SampleBundle {
                    image,
                    masks: b.masks.clone(),
                    boxes: b.boxes.clone(),
                }
            };
        match *self {
            TransformKind::HorizontalFlip => Ok(geom::hflip(b)),
            TransformKind::VerticalFlip => Ok(geom::vflip(b)),
            TransformKind::Rotate {
                theta,
                interp,
                ref border,
            } => geom::rotate(b, theta, interp, border),
            TransformKind::ShiftScaleRotate {
                dx,
                dy,
                scale,
                theta,
                interp,
                ref border,
            } => geom::shift_scale_rotate(b, dx, dy, scale, theta, interp, border),
            TransformKind::RandomCrop { w, h } => geom::random_crop(b, w, h, rng),
            TransformKind::PadToSize {
                target_w,
                target_h,
                ref border,
            } => geom::pad_to_size(b, target_w, target_h, border),
            TransformKind::Resize {
                new_w,
                new_h,
                interp,
            } => geom::resize(b, new_w, new_h, interp),
            TransformKind::RandomSizedCrop {
                min_scale,
                max_scale,
                out_w,
                out_h,
                interp,
            } => geom::random_sized_crop(b, min_scale, max_scale, out_w, out_h, interp, rng),
            TransformKind::D4 => {
                let element = D4Element::from_index(rng.uniform_int(8) as u8)
                    .expect("uniform_int(8) is always a valid element index");
                Ok(geom::d4(b, element))
            }
            TransformKind::GridDistortion {
                num_steps,
                distort_limit,
                interp,
                border,
            } => warp::grid_distortion(
                b,
                &GridDistortParams {
                    num_steps,
                    distort_limit,
                    interp,
                    border,
                },
                rng,
            ),
            TransformKind::ElasticTransform {
                alpha,
                sigma,
                interp,
                border,
            } => warp::elastic_transform(
                b,
                &ElasticParams {
                    alpha,
                    sigma,
                    interp,
                    border,
                },
                rng,
            ),
            TransformKind::Brightness { beta } => Ok(photo_only(photo::brightness(&b.image, beta)?)),
            TransformKind::Contrast { c } => Ok(photo_only(photo::contrast(&b.image, c))),
            TransformKind::Gamma { g } => Ok(photo_only(photo::gamma(&b.image, g)?)),
            TransformKind::ShiftRgb { dr, dg, db } => {
                Ok(photo_only(photo::shift_rgb(&b.image, dr, dg, db)?))
            }
            TransformKind::ShiftHsv { dh, ds, dv } => {
                Ok(photo_only(photo::shift_hsv(&b.image, dh, ds, dv)?))
            }
            TransformKind::Grayscale => Ok(photo_only(photo::grayscale(&b.image)?)),
        }
    }
}

/// One step of a pipeline: a transform plus its application probability.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub p: f64,
}

impl TransformSpec {
    pub fn new(kind: TransformKind, p: f64) -> Result<Self> {
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(Error::ProbabilityRange { value: p });
        }
        kind.validate()?;
        Ok(TransformSpec { kind, p })
    }

    /// Always applied.
    pub fn always(kind: TransformKind) -> Self {
        TransformSpec { kind, p: 1.0 }
    }
}

/// Result of one pipeline application: the output bundle and the seed
/// that produced it (reported so entropy-seeded runs stay reproducible).
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    pub bundle: SampleBundle,
    pub seed: u64,
}

/// An ordered list of probabilistic transforms with an optional default
/// seed. Application order is list order; there is no reordering.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pipeline {
    pub transforms: Vec<TransformSpec>,
    pub seed: Option<u64>,
}

impl Pipeline {
    pub fn new(transforms: Vec<TransformSpec>) -> Self {
        Pipeline {
            transforms,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Apply the pipeline. The effective seed is `seed_override`, else
    /// the pipeline seed, else fresh entropy; it is returned alongside
    /// the bundle.
    ///
    /// All parameters are validated before any transform runs, so a bad
    /// config never produces partial work.
    pub fn apply(&self, bundle: &SampleBundle, seed_override: Option<u64>) -> Result<PipelineRun> {
        for t in &self.transforms {
            if !(t.p.is_finite() && (0.0..=1.0).contains(&t.p)) {
                return Err(Error::ProbabilityRange { value: t.p });
            }
            t.kind.validate()?;
        }
        let seed = seed_override.or(self.seed).unwrap_or_else(entropy_seed);
        let mut rng = RngStream::new(seed);
        // Unconditional gate draws, one per transform in list order.
        let gates: Vec<f64> = self.transforms.iter().map(|_| rng.uniform_f64()).collect();
        let mut current = bundle.clone();
        for (t, gate) in self.transforms.iter().zip(gates) {
            if gate < t.p {
                current = t.kind.apply(&current, &mut rng)?;
            }
        }
        Ok(PipelineRun {
            bundle: current,
            seed,
        })
    }

    /// Serialize to the JSON config format.
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        if let Some(seed) = self.seed {
            root.insert("seed".into(), json!(seed));
        }
        let transforms: Vec<Value> = self
            .transforms
            .iter()
            .map(|t| {
                json!({
                    "name": t.kind.name(),
                    "p": t.p,
                    "params": kind_params_json(&t.kind),
                })
            })
            .collect();
        root.insert("transforms".into(), Value::Array(transforms));
        serde_json::to_string_pretty(&Value::Object(root)).expect("pipeline json is always valid")
    }

    /// Parse the JSON config format. Unknown transform names, unknown or
    /// missing parameters, and out-of-range probabilities are rejected.
    pub fn from_json(text: &str) -> Result<Pipeline> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("invalid json: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| Error::Config("top level must be an object".into()))?;
        for key in obj.keys() {
            if key != "seed" && key != "transforms" {
                return Err(Error::Config(format!("unknown top-level field \"{key}\"")));
            }
        }
        let seed = match obj.get("seed") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| {
                Error::Config("\"seed\" must be a non-negative integer".into())
            })?),
        };
        let transforms = obj
            .get("transforms")
            .ok_or_else(|| Error::Config("missing \"transforms\" array".into()))?
            .as_array()
            .ok_or_else(|| Error::Config("\"transforms\" must be an array".into()))?
            .iter()
            .map(transform_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Pipeline { transforms, seed })
    }
}

fn interp_name(i: Interpolation) -> &'static str {
    match i {
        Interpolation::Nearest => "nearest",
        Interpolation::Bilinear => "bilinear",
    }
}

fn border_json(params: &mut Map<String, Value>, border: &BorderPolicy) {
    let mode = match border.mode {
        BorderMode::Constant => "constant",
        BorderMode::Reflect101 => "reflect101",
    };
    params.insert("border".into(), json!(mode));
    params.insert("fill".into(), json!(border.fill.to_vec()));
    params.insert("mask_fill".into(), json!(border.mask_fill));
}

fn kind_params_json(kind: &TransformKind) -> Value {
    let mut p = Map::new();
    match *kind {
        TransformKind::HorizontalFlip
        | TransformKind::VerticalFlip
        | TransformKind::D4
        | TransformKind::Grayscale => {}
        TransformKind::Rotate {
            theta,
            interp,
            ref border,
        } => {
            p.insert("theta".into(), json!(theta));
            p.insert("interp".into(), json!(interp_name(interp)));
            border_json(&mut p, border);
        }
        TransformKind::ShiftScaleRotate {
            dx,
            dy,
            scale,
            theta,
            interp,
            ref border,
        } => {
            p.insert("dx".into(), json!(dx));
            p.insert("dy".into(), json!(dy));
            p.insert("scale".into(), json!(scale));
            p.insert("theta".into(), json!(theta));
            p.insert("interp".into(), json!(interp_name(interp)));
            border_json(&mut p, border);
        }
        TransformKind::RandomCrop { w, h } => {
            p.insert("w".into(), json!(w));
            p.insert("h".into(), json!(h));
        }
        TransformKind::PadToSize {
            target_w,
            target_h,
            ref border,
        } => {
            p.insert("target_w".into(), json!(target_w));
            p.insert("target_h".into(), json!(target_h));
            border_json(&mut p, border);
        }
        TransformKind::Resize {
            new_w,
            new_h,
            interp,
        } => {
            p.insert("new_w".into(), json!(new_w));
            p.insert("new_h".into(), json!(new_h));
            p.insert("interp".into(), json!(interp_name(interp)));
        }
        TransformKind::RandomSizedCrop {
            min_scale,
            max_scale,
            out_w,
            out_h,
            interp,
        } => {
            p.insert("min_scale".into(), json!(min_scale));
            p.insert("max_scale".into(), json!(max_scale));
            p.insert("out_w".into(), json!(out_w));
            p.insert("out_h".into(), json!(out_h));
            p.insert("interp".into(), json!(interp_name(interp)));
        }
        TransformKind::GridDistortion {
            num_steps,
            distort_limit,
            interp,
            ref border,
        } => {
            p.insert("num_steps".into(), json!(num_steps));
            p.insert("distort_limit".into(), json!(distort_limit));
            p.insert("interp".into(), json!(interp_name(interp)));
            border_json(&mut p, border);
        }
        TransformKind::ElasticTransform {
            alpha,
            sigma,
            interp,
            ref border,
        } => {
            p.insert("alpha".into(), json!(alpha));
            p.insert("sigma".into(), json!(sigma));
            p.insert("interp".into(), json!(interp_name(interp)));
            border_json(&mut p, border);
        }
        TransformKind::Brightness { beta } => {
            p.insert("beta".into(), json!(beta));
        }
        TransformKind::Contrast { c } => {
            p.insert("c".into(), json!(c));
        }
        TransformKind::Gamma { g } => {
            p.insert("g".into(), json!(g));
        }
        TransformKind::ShiftRgb { dr, dg, db } => {
            p.insert("dr".into(), json!(dr));
            p.insert("dg".into(), json!(dg));
            p.insert("db".into(), json!(db));
        }
        TransformKind::ShiftHsv { dh, ds, dv } => {
            p.insert("dh".into(), json!(dh));
            p.insert("ds".into(), json!(ds));
            p.insert("dv".into(), json!(dv));
        }
    }
    Value::Object(p)
}

/// Tracks a transform's params object, consuming keys as they are read
/// so leftovers can be rejected.
struct ParamReader {
    transform: String,
    map: Map<String, Value>,
}

impl ParamReader {
    fn take(&mut self, key: &str) -> Option<Value> {
        self.map.remove(key)
    }

    fn missing(&self, key: &str) -> Error {
        Error::MissingParam {
            transform: self.transform.clone(),
            field: key.into(),
        }
    }

    fn bad(&self, key: &str, want: &str) -> Error {
        Error::Config(format!(
            "transform {}: parameter \"{key}\" must be {want}",
            self.transform
        ))
    }

    fn req_f64(&mut self, key: &str) -> Result<f64> {
        let v = self.take(key).ok_or_else(|| self.missing(key))?;
        v.as_f64().ok_or_else(|| self.bad(key, "a number"))
    }

    fn req_u32(&mut self, key: &str) -> Result<u32> {
        let v = self.take(key).ok_or_else(|| self.missing(key))?;
        v.as_u64()
            .filter(|&n| n <= u32::MAX as u64)
            .map(|n| n as u32)
            .ok_or_else(|| self.bad(key, "a non-negative integer"))
    }

    fn interp(&mut self) -> Result<Interpolation> {
        match self.take("interp") {
            None => Ok(Interpolation::Bilinear),
            Some(Value::String(s)) => match s.as_str() {
                "nearest" => Ok(Interpolation::Nearest),
                "bilinear" => Ok(Interpolation::Bilinear),
                _ => Err(self.bad("interp", "\"nearest\" or \"bilinear\"")),
            },
            Some(_) => Err(self.bad("interp", "\"nearest\" or \"bilinear\"")),
        }
    }

    fn border(&mut self) -> Result<BorderPolicy> {
        let mode = match self.take("border") {
            None => BorderMode::Constant,
            Some(Value::String(s)) => match s.as_str() {
                "constant" => BorderMode::Constant,
                "reflect101" => BorderMode::Reflect101,
                _ => return Err(self.bad("border", "\"constant\" or \"reflect101\"")),
            },
            Some(_) => return Err(self.bad("border", "\"constant\" or \"reflect101\"")),
        };
        let fill = match self.take("fill") {
            None => [0, 0, 0],
            Some(Value::Array(values)) if values.len() == 3 => {
                let mut fill = [0u8; 3];
                for (slot, v) in fill.iter_mut().zip(&values) {
                    *slot = v
                        .as_u64()
                        .filter(|&n| n <= 255)
                        .ok_or_else(|| self.bad("fill", "three samples in 0..=255"))?
                        as u8;
                }
                fill
            }
            Some(_) => return Err(self.bad("fill", "three samples in 0..=255")),
        };
        let mask_fill = match self.take("mask_fill") {
            None => 0,
            Some(v) => v
                .as_u64()
                .filter(|&n| n <= 255)
                .ok_or_else(|| self.bad("mask_fill", "a label in 0..=255"))? as u8,
        };
        Ok(BorderPolicy {
            mode,
            fill,
            mask_fill,
        })
    }

    fn finish(self) -> Result<()> {
        if let Some(key) = self.map.into_iter().next() {
            return Err(Error::UnknownParam {
                transform: self.transform,
                field: key.0,
            });
        }
        Ok(())
    }
}

fn transform_from_json(entry: &Value) -> Result<TransformSpec> {
    let obj = entry
        .as_object()
        .ok_or_else(|| Error::Config("each transform must be an object".into()))?;
    for key in obj.keys() {
        if key != "name" && key != "p" && key != "params" {
            return Err(Error::Config(format!(
                "unknown transform field \"{key}\""
            )));
        }
    }
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Config("transform entry needs a string \"name\"".into()))?;
    let p = obj
        .get("p")
        .ok_or_else(|| Error::Config(format!("transform {name}: missing \"p\"")))?
        .as_f64()
        .ok_or_else(|| Error::Config(format!("transform {name}: \"p\" must be a number")))?;
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(Error::ProbabilityRange { value: p });
    }
    let params = match obj.get("params") {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => {
            return Err(Error::Config(format!(
                "transform {name}: \"params\" must be an object"
            )))
        }
    };
    let mut reader = ParamReader {
        transform: name.to_string(),
        map: params,
    };
    let kind = match name {
        "HorizontalFlip" => TransformKind::HorizontalFlip,
        "VerticalFlip" => TransformKind::VerticalFlip,
        "Rotate" => TransformKind::Rotate {
            theta: reader.req_f64("theta")?,
            interp: reader.interp()?,
            border: reader.border()?,
        },
        "ShiftScaleRotate" => TransformKind::ShiftScaleRotate {
            dx: reader.req_f64("dx")?,
            dy: reader.req_f64("dy")?,
            scale: reader.req_f64("scale")?,
            theta: reader.req_f64("theta")?,
            interp: reader.interp()?,
            border: reader.border()?,
        },
        "RandomCrop" => TransformKind::RandomCrop {
            w: reader.req_u32("w")?,
            h: reader.req_u32("h")?,
        },
        "PadToSize" => TransformKind::PadToSize {
            target_w: reader.req_u32("target_w")?,
            target_h: reader.req_u32("target_h")?,
            border: reader.border()?,
        },
        "Resize" => TransformKind::Resize {
            new_w: reader.req_u32("new_w")?,
            new_h: reader.req_u32("new_h")?,
            interp: reader.interp()?,
        },
        "RandomSizedCrop" => TransformKind::RandomSizedCrop {
            min_scale: reader.req_f64("min_scale")?,
            max_scale: reader.req_f64("max_scale")?,
            out_w: reader.req_u32("out_w")?,
            out_h: reader.req_u32("out_h")?,
            interp: reader.interp()?,
        },
        "D4" => TransformKind::D4,
        "GridDistortion" => TransformKind::GridDistortion {
            num_steps: reader.req_u32("num_steps")?,
            distort_limit: reader.req_f64("distort_limit")?,
            interp: reader.interp()?,
            border: reader.border()?,
        },
        "ElasticTransform" => TransformKind::ElasticTransform {
            alpha: reader.req_f64("alpha")?,
            sigma: reader.req_f64("sigma")?,
            interp: reader.interp()?,
            border: reader.border()?,
        },
        "Brightness" => TransformKind::Brightness {
            beta: reader.req_f64("beta")?,
        },
        "Contrast" => TransformKind::Contrast {
            c: reader.req_f64("c")?,
        },
        "Gamma" => TransformKind::Gamma {
            g: reader.req_f64("g")?,
        },
        "ShiftRGB" => TransformKind::ShiftRgb {
            dr: reader.req_f64("dr")?,
            dg: reader.req_f64("dg")?,
            db: reader.req_f64("db")?,
        },
        "ShiftHSV" => TransformKind::ShiftHsv {
            dh: reader.req_f64("dh")?,
            ds: reader.req_f64("ds")?,
            dv: reader.req_f64("dv")?,
        },
        "Grayscale" => TransformKind::Grayscale,
        other => {
            return Err(Error::UnknownTransform {
                name: other.to_string(),
            })
        }
    };
    reader.finish()?;
    kind.validate()?;
    Ok(TransformSpec { kind, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::ImageBuffer;

    fn random_bundle(seed: u64, w: u32, h: u32) -> SampleBundle {
        let mut rng = RngStream::new(seed);
        let data: Vec<u8> = (0..w as usize * h as usize * 3)
            .map(|_| rng.next_u64() as u8)
            .collect();
        SampleBundle::from_image(ImageBuffer::new(w, h, 3, data).unwrap())
    }

    fn every_kind_pipeline() -> Pipeline {
        let border = BorderPolicy::reflect101().with_mask_fill(3);
        Pipeline::new(vec![
            TransformSpec::new(TransformKind::HorizontalFlip, 0.5).unwrap(),
            TransformSpec::new(TransformKind::VerticalFlip, 0.25).unwrap(),
            TransformSpec::new(
                TransformKind::Rotate {
                    theta: 33.0,
                    interp: Interpolation::Nearest,
                    border,
                },
                1.0,
            )
            .unwrap(),
            TransformSpec::new(
                TransformKind::ShiftScaleRotate {
                    dx: 0.05,
                    dy: -0.1,
                    scale: 1.2,
                    theta: -15.0,
                    interp: Interpolation::Bilinear,
                    border: BorderPolicy::constant([1, 2, 3]),
                },
                0.9,
            )
            .unwrap(),
            TransformSpec::new(TransformKind::RandomCrop { w: 8, h: 8 }, 1.0).unwrap(),
            TransformSpec::new(
                TransformKind::PadToSize {
                    target_w: 16,
                    target_h: 16,
                    border: BorderPolicy::default(),
                },
                1.0,
            )
            .unwrap(),
            TransformSpec::new(
                TransformKind::Resize {
                    new_w: 12,
                    new_h: 10,
                    interp: Interpolation::Bilinear,
                },
                1.0,
            )
            .unwrap(),
            TransformSpec::new(
                TransformKind::RandomSizedCrop {
                    min_scale: 0.4,
                    max_scale: 0.9,
                    out_w: 10,
                    out_h: 10,
                    interp: Interpolation::Nearest,
                },
                0.8,
            )
            .unwrap(),
            TransformSpec::new(TransformKind::D4, 0.5).unwrap(),
            TransformSpec::new(
                TransformKind::GridDistortion {
                    num_steps: 4,
                    distort_limit: 0.3,
                    interp: Interpolation::Bilinear,
                    border: BorderPolicy::default(),
                },
                0.7,
            )
            .unwrap(),
            TransformSpec::new(
                TransformKind::ElasticTransform {
                    alpha: 2.0,
                    sigma: 1.5,
                    interp: Interpolation::Bilinear,
                    border: BorderPolicy::default(),
                },
                0.7,
            )
            .unwrap(),
            TransformSpec::new(TransformKind::Brightness { beta: 1.4 }, 0.5).unwrap(),
            TransformSpec::new(TransformKind::Contrast { c: 0.8 }, 0.5).unwrap(),
            TransformSpec::new(TransformKind::Gamma { g: 1.6 }, 0.5).unwrap(),
            TransformSpec::new(
                TransformKind::ShiftRgb {
                    dr: 10.0,
                    dg: -5.0,
                    db: 0.5,
                },
                0.5,
            )
            .unwrap(),
            TransformSpec::new(
                TransformKind::ShiftHsv {
                    dh: 20.0,
                    ds: 0.1,
                    dv: -0.05,
                },
                0.5,
            )
            .unwrap(),
            TransformSpec::new(TransformKind::Grayscale, 0.3).unwrap(),
        ])
        .with_seed(1234)
    }

    #[test]
    fn empty_pipeline_is_identity() {
        let b = random_bundle(90, 6, 6);
        let run = Pipeline::default().apply(&b, Some(1)).unwrap();
        assert_eq!(run.bundle, b);
        assert_eq!(run.seed, 1);
    }

    #[test]
    fn double_hflip_is_identity() {
        let b = random_bundle(91, 6, 6);
        let p = Pipeline::new(vec![
            TransformSpec::always(TransformKind::HorizontalFlip),
            TransformSpec::always(TransformKind::HorizontalFlip),
        ]);
        assert_eq!(p.apply(&b, Some(7)).unwrap().bundle, b);
    }

    #[test]
    fn zero_probability_gates_never_fire() {
        let b = random_bundle(92, 6, 6);
        let p = Pipeline::new(vec![
            TransformSpec::new(TransformKind::Grayscale, 0.0).unwrap(),
            TransformSpec::new(TransformKind::HorizontalFlip, 0.0).unwrap(),
        ]);
        for seed in 0..100 {
            assert_eq!(p.apply(&b, Some(seed)).unwrap().bundle, b);
        }
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let b = random_bundle(93, 24, 20);
        let p = every_kind_pipeline();
        let a = p.apply(&b, Some(42)).unwrap();
        let c = p.apply(&b, Some(42)).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn hundred_seed_sweep_replays_bit_identically() {
        let b = random_bundle(100, 16, 16);
        let p = Pipeline::new(vec![
            TransformSpec::new(TransformKind::D4, 1.0).unwrap(),
            TransformSpec::new(TransformKind::RandomCrop { w: 12, h: 12 }, 1.0).unwrap(),
            TransformSpec::new(
                TransformKind::GridDistortion {
                    num_steps: 3,
                    distort_limit: 0.4,
                    interp: Interpolation::Bilinear,
                    border: BorderPolicy::default(),
                },
                0.5,
            )
            .unwrap(),
            TransformSpec::new(TransformKind::Gamma { g: 1.4 }, 0.5).unwrap(),
        ]);
        for seed in 0..100 {
            assert_eq!(
                p.apply(&b, Some(seed)).unwrap(),
                p.apply(&b, Some(seed)).unwrap(),
                "seed {seed} diverged"
            );
        }
    }

    #[test]
    fn entropy_seed_is_reported_and_replayable() {
        let b = random_bundle(94, 12, 12);
        let p = Pipeline::new(vec![
            TransformSpec::new(TransformKind::D4, 1.0).unwrap(),
            TransformSpec::new(TransformKind::Brightness { beta: 1.2 }, 0.5).unwrap(),
        ]);
        let first = p.apply(&b, None).unwrap();
        let replay = p.apply(&b, Some(first.seed)).unwrap();
        assert_eq!(first.bundle, replay.bundle);
    }

    #[test]
    fn gate_stability_under_param_edits() {
        // Changing GridDistortion's num_steps changes how many values it
        // draws when fired, but must not change which transforms fire.
        // With distort_limit = 0 the distortion itself is an identity, so
        // the output depends only on whether the flip fired, and must
        // match across both step counts at every seed.
        let b = random_bundle(95, 16, 16);
        let make = |steps: u32| {
            Pipeline::new(vec![
                TransformSpec::new(
                    TransformKind::GridDistortion {
                        num_steps: steps,
                        distort_limit: 0.0,
                        interp: Interpolation::Nearest,
                        border: BorderPolicy::default(),
                    },
                    0.5,
                )
                .unwrap(),
                TransformSpec::new(TransformKind::HorizontalFlip, 0.5).unwrap(),
            ])
        };
        let narrow = make(2);
        let wide = make(9);
        for seed in 0..300 {
            assert_eq!(
                narrow.apply(&b, Some(seed)).unwrap().bundle,
                wide.apply(&b, Some(seed)).unwrap().bundle,
                "firing changed at seed {seed}"
            );
        }
    }

    #[test]
    fn gate_rate_matches_probability() {
        let b = random_bundle(96, 2, 1);
        let p = Pipeline::new(vec![TransformSpec::new(TransformKind::HorizontalFlip, 0.5)
            .unwrap()]);
        let mut fired = 0u32;
        for seed in 0..10_000 {
            let out = p.apply(&b, Some(seed)).unwrap();
            if out.bundle != b {
                fired += 1;
            }
        }
        assert!((4800..=5200).contains(&fired), "fired {fired} times");
    }

    #[test]
    fn photo_ops_leave_masks_and_boxes_untouched() {
        let mut rng = RngStream::new(99);
        let mask: Vec<u8> = (0..36).map(|_| rng.next_u64() as u8).collect();
        let mut bundle = random_bundle(99, 6, 6);
        bundle.masks = vec![crate::image::MaskBuffer::new(6, 6, mask).unwrap()];
        bundle.boxes = vec![crate::bbox::BoundingBox::new(0.1, 0.2, 0.7, 0.9, 4).unwrap()];
        let kinds = [
            TransformKind::Brightness { beta: 1.7 },
            TransformKind::Contrast { c: 0.4 },
            TransformKind::Gamma { g: 2.2 },
            TransformKind::ShiftRgb {
                dr: 15.0,
                dg: -8.0,
                db: 3.0,
            },
            TransformKind::ShiftHsv {
                dh: 90.0,
                ds: 0.2,
                dv: -0.1,
            },
            TransformKind::Grayscale,
        ];
        for kind in kinds {
            let p = Pipeline::new(vec![TransformSpec::always(kind.clone())]);
            let out = p.apply(&bundle, Some(3)).unwrap().bundle;
            assert_eq!(out.masks, bundle.masks, "{} touched masks", kind.name());
            assert_eq!(out.boxes, bundle.boxes, "{} touched boxes", kind.name());
            assert_ne!(out.image, bundle.image, "{} left pixels unchanged", kind.name());
        }
    }

    #[test]
    fn empty_config_round_trips() {
        let p = Pipeline::default();
        let text = p.to_json();
        assert_eq!(Pipeline::from_json(&text).unwrap(), p);
        let parsed = Pipeline::from_json("{\"transforms\": []}").unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn gamma_config_round_trips_and_applies() {
        let text = r#"{"transforms": [{"name": "Gamma", "p": 1, "params": {"g": 2.0}}]}"#;
        let p = Pipeline::from_json(text).unwrap();
        assert_eq!(
            p.transforms,
            vec![TransformSpec::new(TransformKind::Gamma { g: 2.0 }, 1.0).unwrap()]
        );
        let b = random_bundle(97, 4, 4);
        let out = p.apply(&b, Some(0)).unwrap().bundle;
        assert_eq!(out.image, photo::gamma(&b.image, 2.0).unwrap());
        let round = Pipeline::from_json(&p.to_json()).unwrap();
        assert_eq!(round, p);
    }

    #[test]
    fn every_kind_round_trips() {
        let p = every_kind_pipeline();
        let text = p.to_json();
        let parsed = Pipeline::from_json(&text).unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn unknown_names_are_rejected_with_the_valid_list() {
        let text = r#"{"transforms": [{"name": "Sepia", "p": 1, "params": {}}]}"#;
        let err = Pipeline::from_json(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Sepia"));
        assert!(msg.contains("HorizontalFlip"));
        assert!(msg.contains("Grayscale"));
    }

    #[test]
    fn missing_params_name_the_field() {
        let text = r#"{"transforms": [{"name": "Gamma", "p": 1, "params": {}}]}"#;
        let err = Pipeline::from_json(text).unwrap_err();
        assert!(err.to_string().contains("\"g\""), "{err}");
    }

    #[test]
    fn unknown_params_are_rejected() {
        let text = r#"{"transforms": [{"name": "Gamma", "p": 1, "params": {"g": 2.0, "gain": 3}}]}"#;
        let err = Pipeline::from_json(text).unwrap_err();
        assert!(err.to_string().contains("gain"), "{err}");
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        for p in ["-0.1", "1.5"] {
            let text = format!(
                r#"{{"transforms": [{{"name": "Grayscale", "p": {p}, "params": {{}}}}]}}"#
            );
            let err = Pipeline::from_json(&text).unwrap_err();
            assert!(matches!(err, Error::ProbabilityRange { .. }), "{err}");
        }
    }

    #[test]
    fn invalid_static_params_fail_before_any_transform_runs() {
        let b = random_bundle(98, 6, 6);
        let p = Pipeline {
            transforms: vec![
                TransformSpec::always(TransformKind::Grayscale),
                TransformSpec {
                    kind: TransformKind::Brightness { beta: -2.0 },
                    p: 1.0,
                },
            ],
            seed: None,
        };
        assert!(p.apply(&b, Some(0)).is_err());
    }

    #[test]
    fn seed_round_trips_through_json() {
        let p = Pipeline::new(vec![TransformSpec::always(TransformKind::Grayscale)])
            .with_seed(0xDEADBEEF);
        let parsed = Pipeline::from_json(&p.to_json()).unwrap();
        assert_eq!(parsed.seed, Some(0xDEADBEEF));
    }
}
