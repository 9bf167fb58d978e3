use std::io::Read;

use qhyper_core::json::state_from_json;
use qhyper_core::ket::parse_ket_with;
use qhyper_core::{Normalization, QubitState};

use crate::Failure;

pub fn read_source(arg: &str) -> Result<String, Failure> {
    if arg.contains('|') {
        return Ok(arg.to_owned());
    }
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::io("stdin", e))?;
        return Ok(text);
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::io(arg, e))
}

/// Ket text or state JSON, told apart by the first non-blank character.
pub fn parse_state(text: &str, mode: Normalization) -> Result<QubitState, Failure> {
    let state = if text.trim_start().starts_with('{') {
        state_from_json(text, mode)?
    } else {
        parse_ket_with(text.trim(), mode)?
    };
    Ok(state)
}

pub fn load_state(arg: &str) -> Result<QubitState, Failure> {
    parse_state(&read_source(arg)?, Normalization::Check)
}

pub fn write_output(out: Option<&str>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::io(path, e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_ket_and_json_are_recognized() {
        let s = load_state("1|01>").unwrap();
        assert_eq!(s.num_qubits(), 2);
        let j = parse_state(
            r#" {"num_qubits":1,"amplitudes":[{"re":0,"im":0},{"re":1,"im":0}]}"#,
            Normalization::Check,
        )
        .unwrap();
        assert_eq!(j, QubitState::basis(1, 1).unwrap());
    }

    #[test]
    fn failures_map_to_codes() {
        assert_eq!(load_state("1|0> + |1").unwrap_err().code, 2);
        assert_eq!(load_state("2|0>").unwrap_err().code, 3);
        assert_eq!(load_state("/nonexistent/qhyper-state").unwrap_err().code, 3);
        assert_eq!(parse_state("{", Normalization::Check).unwrap_err().code, 2);
    }
}
