//! Domino-ladder (Cauer) synthesis and its passive realization.

mod elements;
mod netlist;

pub use elements::{
    factor_negative_admittance, map_elements, CascadePair, CircuitBranch, CircuitElement,
    Component, ComponentKind,
};
pub use netlist::{export_netlist, export_netlist_with, NetlistOptions};

use std::fmt;

use crate::approx::{rational_to_cfe, Affine, ApproxError, ContinuedFraction, TransferFunction};
use crate::exact::BigRat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LadderError {
    #[error("zero admittance")]
    ZeroAdmittance,
    #[error("empty ladder network")]
    Empty,
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

/// Series impedance or shunt admittance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Z,
    Y,
}

impl Role {
    fn at(position: usize) -> Role {
        if position % 2 == 1 {
            Role::Z
        } else {
            Role::Y
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Z => "Z",
            Role::Y => "Y",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderElement {
    pub role: Role,
    /// 1-based position; odd positions are impedances.
    pub position: usize,
    pub value: Affine,
}

impl LadderElement {
    pub fn is_negative(&self) -> bool {
        use num_traits::Signed;
        self.value.g.is_negative() || self.value.h.is_negative()
    }
}

/// `Z1 + 1/(Y2 + 1/(Z3 + 1/(Y4 + ...)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderNetwork {
    pub elements: Vec<LadderElement>,
}

impl LadderNetwork {
    pub fn from_values(values: Vec<Affine>) -> Self {
        LadderNetwork {
            elements: values
                .into_iter()
                .enumerate()
                .map(|(i, value)| LadderElement {
                    role: Role::at(i + 1),
                    position: i + 1,
                    value,
                })
                .collect(),
        }
    }

    pub fn values(&self) -> Vec<Affine> {
        self.elements.iter().map(|e| e.value.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Driving-point impedance of a numeric TF as a domino ladder.
pub fn synthesize_ladder(tf: &TransferFunction<BigRat>) -> Result<LadderNetwork, LadderError> {
    let cf = rational_to_cfe(tf)?;
    Ok(LadderNetwork::from_values(cf.quotients))
}

/// Folds the ladder back into its driving-point impedance.
pub fn ladder_to_tf(net: &LadderNetwork) -> Result<TransferFunction<BigRat>, LadderError> {
    if net.is_empty() {
        return Err(LadderError::Empty);
    }
    Ok(ContinuedFraction {
        quotients: net.values(),
    }
    .reconstruct())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn tf(num: &[i64], den: &[i64]) -> TransferFunction<BigRat> {
        TransferFunction::from_coeffs(
            num.iter().map(|&x| int(x)).collect(),
            den.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn low_range_ladder_roles() {
        let net = synthesize_ladder(&tf(&[7, 56, 112, 64], &[1, 24, 80, 64])).unwrap();
        let roles: Vec<Role> = net.elements.iter().map(|e| e.role).collect();
        assert_eq!(roles, vec![Role::Z, Role::Y, Role::Z, Role::Y]);
        assert_eq!(net.elements[2].value, Affine { g: int(-4), h: int(-8) });
        assert_eq!(net.elements[1].value, Affine { g: rat(1, 2), h: int(2) });
        let back = ladder_to_tf(&net).unwrap();
        assert!(back.equivalent(&tf(&[7, 56, 112, 64], &[1, 24, 80, 64])));
    }

    #[test]
    fn single_element() {
        let net = LadderNetwork::from_values(vec![Affine { g: int(1), h: int(0) }]);
        assert!(ladder_to_tf(&net).unwrap().equivalent(&tf(&[1], &[1])));
        assert_eq!(ladder_to_tf(&LadderNetwork { elements: vec![] }).unwrap_err(), LadderError::Empty);
    }
}
