use std::fmt::Write;

use super::{CircuitBranch, CircuitElement, Role};
use crate::exact::rational::to_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct NetlistOptions {
    /// The two equal resistors of the NIC, ohms.
    pub nic_resistance: f64,
    /// Open-loop gain of the ideal op-amp model.
    pub opamp_gain: f64,
}

impl Default for NetlistOptions {
    fn default() -> Self {
        NetlistOptions {
            nic_resistance: 1000.0,
            opamp_gain: 1e6,
        }
    }
}

pub fn export_netlist(elements: &[CircuitElement], name: &str) -> String {
    export_netlist_with(elements, name, &NetlistOptions::default())
}

/// SPICE-style one-port netlist of the ladder. The port is `n0`–`0`;
/// series elements step along `n1, n2, ...`, shunt elements go to ground
/// and a trailing impedance terminates to ground.
pub fn export_netlist_with(elements: &[CircuitElement], name: &str, opts: &NetlistOptions) -> String {
    let mut body = String::new();
    let mut subckts = String::new();
    let mut node = 0usize;
    let count = elements.len();
    for (i, e) in elements.iter().enumerate() {
        let idx = e.position;
        let a = format!("n{node}");
        let b = match e.role {
            Role::Z if i + 1 == count => "0".to_string(),
            Role::Z => {
                node += 1;
                format!("n{node}")
            }
            Role::Y => "0".to_string(),
        };
        match e.role {
            Role::Z => {
                // Branches and their components form one series chain.
                let mut links: Vec<(&CircuitBranch, usize)> = Vec::new();
                for br in &e.branches {
                    if br.nic_wrapped {
                        links.push((br, usize::MAX));
                    } else {
                        for k in 0..br.components.len() {
                            links.push((br, k));
                        }
                    }
                }
                let mut from = a.clone();
                for (j, (br, k)) in links.iter().enumerate() {
                    let to = if j + 1 == links.len() { b.clone() } else { format!("n{idx}_{}", j + 1) };
                    if *k == usize::MAX {
                        emit_nic(&mut body, &mut subckts, idx, br, Role::Z, &from, &to, opts);
                    } else {
                        let c = &br.components[*k];
                        let _ = writeln!(body, "{}{idx} {from} {to} {}", c.kind.prefix(), to_f64(&c.value));
                    }
                    from = to;
                }
            }
            Role::Y => {
                for br in &e.branches {
                    if br.nic_wrapped {
                        emit_nic(&mut body, &mut subckts, idx, br, Role::Y, &a, &b, opts);
                    } else {
                        for c in &br.components {
                            let _ = writeln!(body, "{}{idx} {a} {b} {}", c.kind.prefix(), to_f64(&c.value));
                        }
                    }
                }
            }
        }
    }
    let mut out = subckts;
    out.push_str(&body);
    let _ = writeln!(out, ".PORT {name} n0 0");
    out
}

#[allow(clippy::too_many_arguments)]
fn emit_nic(
    body: &mut String,
    subckts: &mut String,
    idx: usize,
    br: &CircuitBranch,
    role: Role,
    a: &str,
    b: &str,
    opts: &NetlistOptions,
) {
    let _ = writeln!(subckts, ".SUBCKT NIC{idx} a b");
    let _ = writeln!(subckts, "E1 o b a m {}", opts.opamp_gain);
    let _ = writeln!(subckts, "R1 o m {}", opts.nic_resistance);
    let _ = writeln!(subckts, "R2 m b {}", opts.nic_resistance);
    match role {
        Role::Z => {
            let n = br.components.len();
            for (k, c) in br.components.iter().enumerate() {
                let from = if k == 0 { "a".to_string() } else { format!("x{k}") };
                let to = if k + 1 == n { "o".to_string() } else { format!("x{}", k + 1) };
                let _ = writeln!(subckts, "{}Z {from} {to} {}", c.kind.prefix(), to_f64(&c.value));
            }
        }
        Role::Y => {
            for c in &br.components {
                let _ = writeln!(subckts, "{}Y a o {}", c.kind.prefix(), to_f64(&c.value));
            }
        }
    }
    let _ = writeln!(subckts, ".ENDS");
    let _ = writeln!(body, "X{idx} {a} {b} NIC{idx}");
}
