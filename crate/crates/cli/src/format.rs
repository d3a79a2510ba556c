//! Plain-text rendering of amplitudes, matrices and symbolic sub-matrices.

use belldecomp::{bell_transform, ComplexAmp, DenseMatrix, PairingConvention, StateVector};

fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

pub fn amp(a: ComplexAmp) -> String {
    let (re, im) = (clean(a.re), clean(a.im));
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re:.6}{sign}{:.6}i", im.abs())
}

pub fn matrix(m: &DenseMatrix, indent: &str) -> String {
    let cells: Vec<String> = m.entries().iter().map(|&a| amp(a)).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells.chunks(m.cols()) {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("{indent}[ {} ]\n", line.join("  ")));
    }
    out
}

pub fn state(s: &StateVector, indent: &str) -> String {
    let n = s.num_qubits();
    s.amps()
        .iter()
        .enumerate()
        .map(|(i, &a)| format!("{indent}|{i:0n$b}>  {}\n", amp(a)))
        .collect()
}

/// `σ^μ` in terms of `Y1..Y4`, e.g. `[[Y1, -Y2], [Y3, -Y4]]`.
pub fn symbolic_sub_matrix(mu: u8, convention: PairingConvention) -> String {
    let t = bell_transform().row(mu).expect("mu in range");
    let rows = match convention {
        PairingConvention::BobHoldsFirst => [[1, 2], [3, 4]],
        PairingConvention::BobHoldsSecond => [[1, 3], [2, 4]],
    };
    let entry = |r: usize, col: usize| {
        let terms: Vec<String> = [(t[2 * col], rows[r][0]), (t[2 * col + 1], rows[r][1])]
            .iter()
            .filter(|(coef, _)| *coef != 0.0)
            .map(|&(coef, j)| match coef {
                1.0 => format!("Y{j}"),
                -1.0 => format!("-Y{j}"),
                _ => format!("{coef}*Y{j}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    };
    format!(
        "[[{}, {}], [{}, {}]]",
        entry(0, 0),
        entry(0, 1),
        entry(1, 0),
        entry(1, 1)
    )
}
