//! Line-oriented text form of a circuit.
//!
//! ```text
//! qubits 3
//! h 0
//! zz 0.8 0 2
//! rx 1.4 1
//! cnot 0 1
//! ```
//!
//! Angles are written with Rust's shortest round-trip float formatting, so
//! `parse(serialize(c)) == c` holds bit for bit.

use super::{Circuit, CircuitError, Gate};

pub fn serialize(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.width());
    for g in c.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| CircuitError::Parse { line, msg };
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            if tokens.len() != 2 || tokens[0] != "qubits" {
                return Err(err(format!("expected `qubits N` header, got {raw:?}")));
            }
            let width = parse_index(tokens[1]).map_err(&err)?;
            circuit = Some(Circuit::new(width));
            continue;
        };
        let args = &tokens[1..];
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "`{}` takes {n} arguments, got {}",
                    tokens[0],
                    args.len()
                )))
            }
        };
        let gate = match tokens[0] {
            "h" => {
                arity(1)?;
                Gate::H(parse_index(args[0]).map_err(&err)?)
            }
            "rx" | "rz" => {
                arity(2)?;
                let theta = parse_angle(args[0]).map_err(&err)?;
                let q = parse_index(args[1]).map_err(&err)?;
                if tokens[0] == "rx" {
                    Gate::Rx(theta, q)
                } else {
                    Gate::Rz(theta, q)
                }
            }
            "cnot" | "swap" => {
                arity(2)?;
                let a = parse_index(args[0]).map_err(&err)?;
                let b = parse_index(args[1]).map_err(&err)?;
                if tokens[0] == "cnot" {
                    Gate::Cnot(a, b)
                } else {
                    Gate::Swap(a, b)
                }
            }
            "zz" => {
                arity(3)?;
                let theta = parse_angle(args[0]).map_err(&err)?;
                let a = parse_index(args[1]).map_err(&err)?;
                let b = parse_index(args[2]).map_err(&err)?;
                Gate::Zz(theta, a, b)
            }
            other => return Err(err(format!("unknown gate `{other}`"))),
        };
        c.push(gate).map_err(|e| err(e.to_string()))?;
    }
    circuit.ok_or(CircuitError::Parse {
        line: 1,
        msg: "missing `qubits N` header".into(),
    })
}

fn parse_index(tok: &str) -> Result<usize, String> {
    tok.parse()
        .map_err(|_| format!("invalid qubit index {tok:?}"))
}

fn parse_angle(tok: &str) -> Result<f64, String> {
    let v: f64 = tok.parse().map_err(|_| format!("invalid angle {tok:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("angle must be finite, got {tok:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_round_trip() {
        let c = Circuit::new(0);
        assert_eq!(parse(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn repeated_operand_rejected() {
        let err = parse("qubits 2\ncnot 0 0\n").unwrap_err();
        assert!(matches!(err, CircuitError::Parse { line: 2, .. }));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert!(matches!(
            parse("qubits 2\nh 0\nfoo 1\n"),
            Err(CircuitError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("h 0\n"),
            Err(CircuitError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nrx 0.1\n"),
            Err(CircuitError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nrz nan 0\n"),
            Err(CircuitError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nh 5\n"),
            Err(CircuitError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn mixed_round_trip() {
        let c = Circuit::from_gates(
            3,
            [
                Gate::H(0),
                Gate::Zz(0.8, 0, 2),
                Gate::Rx(-1.0 / 3.0, 1),
                Gate::Rz(std::f64::consts::PI, 2),
                Gate::Cnot(2, 1),
                Gate::Swap(0, 1),
            ],
        )
        .unwrap();
        let text = serialize(&c);
        assert!(text.starts_with("qubits 3\nh 0\nzz 0.8 0 2\n"));
        assert_eq!(parse(&text).unwrap(), c);
    }
}
