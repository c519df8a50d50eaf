use num_traits::{One, Signed, Zero};

use super::{LadderError, LadderNetwork, Role};
use crate::approx::{Poly, TransferFunction};
use crate::exact::BigRat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Resistor,
    Inductor,
    Capacitor,
}

impl ComponentKind {
    pub fn prefix(self) -> char {
        match self {
            ComponentKind::Resistor => 'R',
            ComponentKind::Inductor => 'L',
            ComponentKind::Capacitor => 'C',
        }
    }
}

/// A passive component with a positive value in ohms, henries or farads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub value: BigRat,
}

/// Sign-uniform part of an element. Its components are in series for an
/// impedance and in parallel for an admittance; a NIC presents the
/// negated value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitBranch {
    pub components: Vec<Component>,
    pub nic_wrapped: bool,
}

/// `1/(A + Bs) = 1/(A - Bs) · (A - Bs)/(A + Bs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadePair {
    pub first: TransferFunction<BigRat>,
    pub second: TransferFunction<BigRat>,
    /// `B = 0`: the admittance is a plain conductance.
    pub plain_resistor: bool,
    /// Pole of the first block at `s = A/B`, when it lies in the right
    /// half-plane.
    pub unstable_pole: Option<BigRat>,
}

impl CascadePair {
    pub fn product(&self) -> TransferFunction<BigRat> {
        self.first.mul(&self.second)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitElement {
    pub role: Role,
    pub position: usize,
    /// One branch, or two when the element has mixed signs. Branches
    /// combine like the components inside them.
    pub branches: Vec<CircuitBranch>,
    pub cascade: Option<CascadePair>,
}

impl CircuitElement {
    pub fn nic_wrapped(&self) -> bool {
        self.branches.iter().any(|b| b.nic_wrapped)
    }

    /// `(g, h)` recovered from the signed component values.
    pub fn affine_value(&self) -> (BigRat, BigRat) {
        let mut g = BigRat::zero();
        let mut h = BigRat::zero();
        for b in &self.branches {
            let sign = if b.nic_wrapped { -BigRat::one() } else { BigRat::one() };
            for c in &b.components {
                match (self.role, c.kind) {
                    (Role::Z, ComponentKind::Resistor) => g += &sign * &c.value,
                    (Role::Y, ComponentKind::Resistor) => g += &sign * c.value.recip(),
                    _ => h += &sign * &c.value,
                }
            }
        }
        (g, h)
    }
}

fn branch(role: Role, g: &BigRat, h: &BigRat, nic: bool) -> CircuitBranch {
    let mut components = Vec::new();
    if !g.is_zero() {
        let value = match role {
            Role::Z => g.abs(),
            Role::Y => g.abs().recip(),
        };
        components.push(Component {
            kind: ComponentKind::Resistor,
            value,
        });
    }
    if !h.is_zero() {
        components.push(Component {
            kind: match role {
                Role::Z => ComponentKind::Inductor,
                Role::Y => ComponentKind::Capacitor,
            },
            value: h.abs(),
        });
    }
    CircuitBranch {
        components,
        nic_wrapped: nic,
    }
}

/// Maps each affine ladder value to components. Negative admittances also
/// carry their cascade factorization.
pub fn map_elements(net: &LadderNetwork) -> Vec<CircuitElement> {
    net.elements
        .iter()
        .map(|e| {
            let (g, h) = (&e.value.g, &e.value.h);
            let zero = BigRat::zero();
            let mixed = g.is_negative() != h.is_negative() && !g.is_zero() && !h.is_zero();
            let branches = if mixed {
                vec![
                    branch(e.role, g, &zero, g.is_negative()),
                    branch(e.role, &zero, h, h.is_negative()),
                ]
            } else {
                vec![branch(e.role, g, h, g.is_negative() || h.is_negative())]
            };
            let cascade = (e.role == Role::Y && e.is_negative())
                .then(|| factor_negative_admittance(g, h).ok())
                .flatten();
            CircuitElement {
                role: e.role,
                position: e.position,
                branches,
                cascade,
            }
        })
        .collect()
}

/// Splits `1/(A + Bs)` into `1/(A - Bs)` and the all-pass-like
/// `(A - Bs)/(A + Bs)`.
pub fn factor_negative_admittance(a: &BigRat, b: &BigRat) -> Result<CascadePair, LadderError> {
    if a.is_zero() && b.is_zero() {
        return Err(LadderError::ZeroAdmittance);
    }
    let one = Poly::constant(BigRat::one());
    if b.is_zero() {
        return Ok(CascadePair {
            first: TransferFunction::new(one.clone(), Poly::constant(a.clone()))?,
            second: TransferFunction::constant(BigRat::one()),
            plain_resistor: true,
            unstable_pole: None,
        });
    }
    let minus = Poly::affine(a.clone(), -b.clone());
    let plus = Poly::affine(a.clone(), b.clone());
    let pole = a / b;
    Ok(CascadePair {
        first: TransferFunction::new(one, minus.clone())?,
        second: TransferFunction::new(minus, plus)?,
        plain_resistor: false,
        unstable_pole: pole.is_positive().then_some(pole),
    })
}
