use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::Value;

use crate::analysis::DEFAULT_SEED;
use crate::complex_map::{MapParams, Order};
use crate::error::{Error, Result};
use crate::render::preset;

/// Resolved run parameters: defaults, then a preset, then a JSON config
/// file, then command-line flags, each layer overriding the previous one.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: u32,
    pub m: Order,
    pub s: Complex64,
    pub a: Option<Complex64>,
    pub alpha: f64,
    pub depth: Option<u32>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub preset: Option<String>,
    pub exhaustive: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            m: Order::Finite(0),
            s: Complex64::new(0.3, 0.0),
            a: None,
            alpha: 1.0,
            depth: None,
            seed: DEFAULT_SEED,
            out: None,
            format: None,
            preset: None,
            exhaustive: false,
        }
    }
}

/// A partially specified configuration, as read from a file or from flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigLayer {
    pub p: Option<u32>,
    pub m: Option<Order>,
    pub s: Option<Complex64>,
    pub a: Option<Complex64>,
    pub alpha: Option<f64>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub preset: Option<String>,
    pub exhaustive: Option<bool>,
}

impl ConfigLayer {
    /// `other` wins wherever it is set.
    pub fn overlay(mut self, other: &ConfigLayer) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(p, m, s, a, alpha, depth, seed, out, format, preset, exhaustive);
        self
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(name) = &self.preset {
            let fig = preset(name)?;
            cfg.p = fig.p();
            cfg.m = fig.map.m();
            cfg.s = fig.s();
            cfg.a = fig.a();
            cfg.depth = Some(fig.depth);
            cfg.preset = Some(name.clone());
        }
        if let Some(p) = self.p {
            cfg.p = p;
        }
        if let Some(m) = self.m {
            cfg.m = m;
        }
        if let Some(s) = self.s {
            cfg.s = s;
        }
        cfg.a = self.a.or(cfg.a);
        cfg.alpha = self.alpha.unwrap_or(cfg.alpha);
        cfg.depth = self.depth.or(cfg.depth);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.out = self.out.clone();
        cfg.format = self.format.clone();
        cfg.exhaustive = self.exhaustive.unwrap_or(false);
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::Parameter(format!("field `p`: base must be at least 2, got {}", self.p)));
        }
        let abs_s = self.s.norm();
        if !(abs_s < 1.0) || abs_s == 0.0 {
            return Err(Error::Parameter(format!("field `s`: need 0 < |s| < 1, got |s| = {abs_s}")));
        }
        if let Some(a) = self.a {
            if a.norm() == 0.0 || !a.is_finite() {
                return Err(Error::Parameter("field `a`: must be a finite non-zero complex number".into()));
            }
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Parameter(format!("field `alpha`: must be positive, got {}", self.alpha)));
        }
        Ok(())
    }

    pub fn map_params(&self) -> Result<MapParams> {
        MapParams::new(self.p, self.m, self.s)
    }
}

/// Parses `"re,im"` or a single real.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| Error::Parameter(format!("expected a real number or `re,im`, got `{text}`")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Error::Parameter(format!("expected a real number or `re,im`, got `{text}`"))),
    }
}

fn complex_field(key: &str, v: &Value) -> Result<Complex64> {
    let bad = || Error::Parameter(format!("field `{key}`: expected a number or a [re, im] pair, got {v}"));
    match v {
        Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)).ok_or_else(bad),
        Value::Array(items) if items.len() == 2 => {
            let re = items[0].as_f64().ok_or_else(bad)?;
            let im = items[1].as_f64().ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        Value::String(s) => parse_complex(s).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn uint_field(key: &str, v: &Value) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Parameter(format!("field `{key}`: expected a non-negative integer, got {v}")))
}

fn u32_field(key: &str, v: &Value) -> Result<u32> {
    u32::try_from(uint_field(key, v)?)
        .map_err(|_| Error::Parameter(format!("field `{key}`: value {v} is out of range")))
}

fn string_field(key: &str, v: &Value) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::Parameter(format!("field `{key}`: expected a string, got {v}")))
}

/// Reads one configuration layer from a JSON object.
///
/// `s` and `a` accept a real or a `[re, im]` pair; `m` accepts an integer or
/// the string `"inf"`.
pub fn parse_config_layer(bytes: &[u8]) -> Result<ConfigLayer> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parameter(format!("malformed JSON config: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parameter("config must be a JSON object".into()))?;
    let mut layer = ConfigLayer::default();
    for (key, v) in obj {
        match key.as_str() {
            "p" => layer.p = Some(u32_field(key, v)?),
            "m" => {
                layer.m = Some(match v {
                    Value::String(s) => s.parse().map_err(|e: Error| Error::Parameter(format!("field `m`: {e}")))?,
                    _ => Order::Finite(u32_field(key, v)?),
                })
            }
            "s" => layer.s = Some(complex_field(key, v)?),
            "a" => layer.a = Some(complex_field(key, v)?),
            "alpha" => {
                layer.alpha = Some(
                    v.as_f64()
                        .ok_or_else(|| Error::Parameter(format!("field `alpha`: expected a number, got {v}")))?,
                )
            }
            "depth" => layer.depth = Some(u32_field(key, v)?),
            "seed" => layer.seed = Some(uint_field(key, v)?),
            "out" => layer.out = Some(PathBuf::from(string_field(key, v)?)),
            "format" => layer.format = Some(string_field(key, v)?),
            "preset" => layer.preset = Some(string_field(key, v)?),
            "exhaustive" => {
                layer.exhaustive = Some(
                    v.as_bool()
                        .ok_or_else(|| Error::Parameter(format!("field `exhaustive`: expected a boolean, got {v}")))?,
                )
            }
            other => return Err(Error::Parameter(format!("unknown config field `{other}`"))),
        }
    }
    Ok(layer)
}

/// A complete configuration from JSON alone, with defaults filled in.
pub fn parse_config(bytes: &[u8]) -> Result<RunConfig> {
    parse_config_layer(bytes)?.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let cfg = parse_config(br#"{"p":2,"s":0.3,"m":0}"#).unwrap();
        assert_eq!((cfg.p, cfg.m, cfg.s), (2, Order::Finite(0), Complex64::new(0.3, 0.0)));
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.alpha, 1.0);
    }

    #[test]
    fn rejects_large_s() {
        let err = parse_config(br#"{"p":2,"s":1.5}"#).unwrap_err();
        assert!(err.to_string().contains("`s`"));
    }

    #[test]
    fn complex_s_and_infinite_m() {
        let cfg = parse_config(br#"{"s":[0.25,0.1],"m":"inf","p":3}"#).unwrap();
        assert_eq!(cfg.s, Complex64::new(0.25, 0.1));
        assert_eq!(cfg.m, Order::Infinite);
        assert_eq!(cfg.p, 3);
    }

    #[test]
    fn field_precise_errors() {
        assert!(parse_config(br#"{"p":"two"}"#).unwrap_err().to_string().contains("`p`"));
        assert!(parse_config(br#"{"m":"lots"}"#).unwrap_err().to_string().contains("`m`"));
        assert!(parse_config(br#"{"q":1}"#).unwrap_err().to_string().contains("`q`"));
        assert!(parse_config(b"{not json").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config_layer(br#"{"p":3,"s":0.2,"depth":5}"#).unwrap();
        let flags = ConfigLayer { s: Some(Complex64::new(0.1, 0.0)), ..Default::default() };
        let cfg = file.overlay(&flags).resolve().unwrap();
        assert_eq!((cfg.p, cfg.s.re, cfg.depth), (3, 0.1, Some(5)));
    }

    #[test]
    fn preset_then_overrides() {
        let layer = ConfigLayer { preset: Some("fig2b-t3".into()), depth: Some(3), ..Default::default() };
        let cfg = layer.resolve().unwrap();
        assert_eq!((cfg.p, cfg.m, cfg.depth), (3, Order::Infinite, Some(3)));
        assert_eq!(cfg.a, Some(Complex64::new(2.5, 0.0)));
    }

    #[test]
    fn complex_text() {
        assert_eq!(parse_complex("0.25,0.1").unwrap(), Complex64::new(0.25, 0.1));
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert!(parse_complex("a,b,c").is_err());
    }
}
