use std::collections::BTreeMap;

use foreal_core::approx::{Affine, Poly};
use foreal_core::exact::parse_rational;
use foreal_core::exact::rational::{format_significant, to_f64};
use foreal_core::ladder::{CircuitElement, ComponentKind, LadderNetwork};
use foreal_core::{BigRat, GainTag, Ring, TransferFunction};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainDoc {
    pub label: String,
    pub value: Option<f64>,
}

impl From<&GainTag> for GainDoc {
    fn from(g: &GainTag) -> Self {
        GainDoc {
            label: g.label.clone(),
            value: g.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub controller: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
}

/// Serialized transfer function. Coefficients are listed from the highest
/// power of `s` down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub variable: String,
    pub num: Vec<String>,
    pub den: Vec<String>,
    #[serde(default)]
    pub gain: Option<GainDoc>,
}

fn descending<R: Ring>(p: &Poly<R>, fmt: impl Fn(&R) -> String) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().rev().map(fmt).collect()
}

impl TfDocument {
    pub fn from_tf<R: Ring + std::fmt::Display>(
        tf: &TransferFunction<R>,
        gain: Option<&GainTag>,
        meta: Option<Meta>,
    ) -> Self {
        TfDocument {
            meta,
            variable: "s".to_string(),
            num: descending(tf.num(), |c| c.to_string()),
            den: descending(tf.den(), |c| c.to_string()),
            gain: gain.map(GainDoc::from),
        }
    }

    /// Rewrites exact coefficients as decimals with 15 significant digits.
    pub fn to_float(&self) -> Result<Self, CliError> {
        let conv = |v: &[String]| -> Result<Vec<String>, CliError> {
            v.iter()
                .map(|c| Ok(format_significant(to_f64(&parse_coeff(c)?), 15)))
                .collect()
        };
        Ok(TfDocument {
            num: conv(&self.num)?,
            den: conv(&self.den)?,
            ..self.clone()
        })
    }

    pub fn to_tf(&self) -> Result<TransferFunction<BigRat>, CliError> {
        if self.variable != "s" {
            return Err(CliError::Validation(format!(
                "unsupported variable {:?}; expected \"s\"",
                self.variable
            )));
        }
        let poly = |v: &[String]| -> Result<Poly<BigRat>, CliError> {
            let mut c = v.iter().map(|s| parse_coeff(s)).collect::<Result<Vec<_>, _>>()?;
            c.reverse();
            Ok(Poly::new(c))
        };
        TransferFunction::new(poly(&self.num)?, poly(&self.den)?)
            .map_err(|_| CliError::Validation("denominator must be nonzero".into()))
    }

    /// Transfer function with the numeric gain folded into the numerator.
    pub fn to_folded_tf(&self) -> Result<TransferFunction<BigRat>, CliError> {
        let tf = self.to_tf()?;
        match &self.gain {
            None => Ok(tf),
            Some(GainDoc { value: Some(v), .. }) => {
                let g = BigRat::from_float(*v)
                    .ok_or_else(|| CliError::Validation(format!("gain value {v} is not finite")))?;
                Ok(tf.scale_gain(&g))
            }
            Some(GainDoc { label, value: None }) => Err(CliError::Validation(format!(
                "gain {label:?} has no numeric value"
            ))),
        }
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("malformed transfer-function document: {e}")))
    }
}

fn parse_coeff(s: &str) -> Result<BigRat, CliError> {
    parse_rational(s).map_err(|_| CliError::Validation(format!("coefficient {s:?} is not an exact rational")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub kind: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub nic: bool,
    pub components: Vec<ComponentDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeDoc {
    pub first: TfDocument,
    pub second: TfDocument,
    pub plain_resistor: bool,
    pub unstable_pole: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub role: String,
    pub position: usize,
    /// `h*s + g` as text.
    pub value: String,
    pub g: String,
    pub h: String,
    pub nic: bool,
    pub branches: Vec<BranchDoc>,
    pub cascade: Option<CascadeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub gain: Option<GainDoc>,
    pub elements: Vec<ElementDoc>,
}

fn kind_name(k: ComponentKind) -> &'static str {
    match k {
        ComponentKind::Resistor => "resistor",
        ComponentKind::Inductor => "inductor",
        ComponentKind::Capacitor => "capacitor",
    }
}

impl LadderDocument {
    pub fn new(
        net: &LadderNetwork,
        circuit: &[CircuitElement],
        gain: Option<GainDoc>,
        meta: Option<Meta>,
    ) -> Self {
        let elements = net
            .elements
            .iter()
            .zip(circuit)
            .map(|(e, c)| ElementDoc {
                role: e.role.to_string(),
                position: e.position,
                value: e.value.to_string(),
                g: e.value.g.to_string(),
                h: e.value.h.to_string(),
                nic: c.nic_wrapped(),
                branches: c
                    .branches
                    .iter()
                    .map(|b| BranchDoc {
                        nic: b.nic_wrapped,
                        components: b
                            .components
                            .iter()
                            .map(|x| ComponentDoc {
                                kind: kind_name(x.kind).to_string(),
                                value: x.value.to_string(),
                            })
                            .collect(),
                    })
                    .collect(),
                cascade: c.cascade.as_ref().map(|p| CascadeDoc {
                    first: TfDocument::from_tf(&p.first, None, None),
                    second: TfDocument::from_tf(&p.second, None, None),
                    plain_resistor: p.plain_resistor,
                    unstable_pole: p.unstable_pole.as_ref().map(|r| r.to_string()),
                }),
            })
            .collect();
        LadderDocument { meta, gain, elements }
    }

    pub fn values(&self) -> Result<Vec<Affine>, CliError> {
        self.elements
            .iter()
            .map(|e| {
                Ok(Affine {
                    g: parse_coeff(&e.g)?,
                    h: parse_coeff(&e.h)?,
                })
            })
            .collect()
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed ladder document: {e}")))
    }
}
