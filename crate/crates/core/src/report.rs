//! Serialized forms of a [`GeometryReport`]: JSON with sorted keys and
//! rationals as `"p/q"` strings, and a plain-text summary.

use serde_json::{json, Map, Value};

use crate::classifier::GeometryReport;
use crate::scalar::{self, Scalar};
use crate::tensor::Tensor;

fn nested(t: &Tensor) -> Value {
    fn build(shape: &[usize], data: &[Scalar]) -> Value {
        match shape.split_first() {
            None => Value::String(scalar::format(&data[0])),
            Some((&n, rest)) => {
                let stride: usize = rest.iter().product();
                Value::Array((0..n).map(|i| build(rest, &data[i * stride..(i + 1) * stride])).collect())
            }
        }
    }
    build(t.shape(), t.data())
}

fn tensor_json(t: &Tensor, slots: &str) -> Value {
    json!({
        "slots": slots,
        "variance": t.variance(),
        "components": nested(t),
    })
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(scalar::format(s))).collect())
}

/// The report as a JSON value. `serde_json` maps are ordered, so the output
/// is byte-stable.
pub fn to_json_value(r: &GeometryReport) -> Value {
    let forms = &r.structure.forms;
    let mut tensors = Map::new();
    tensors.insert(
        "connection".into(),
        tensor_json(r.connection.gamma(), "(k, i, j): nabla_{x_i} x_j = Gamma^k_ij x_k"),
    );
    tensors.insert("fundamental_tensor".into(), tensor_json(&r.structure.f, "(x, y, z): F(x, y, z)"));
    tensors.insert("nabla_eta".into(), tensor_json(&r.structure.nabla_eta, "(x, y): (nabla_x eta) y"));
    tensors.insert("nijenhuis".into(), tensor_json(&r.structure.nijenhuis, "(x, y, l): N(x_i, x_j) = N^l x_l"));
    tensors.insert("s".into(), tensor_json(&r.structure.s, "(x, y): S(x, y)"));
    tensors.insert("curvature".into(), tensor_json(&r.curvature.r04, "(x, y, z, u): R(x, y, z, u)"));
    tensors.insert("ricci".into(), tensor_json(&r.curvature.ricci, "(y, z): rho(y, z)"));
    tensors.insert(
        "one_forms".into(),
        json!({
            "theta": vector_json(&forms.theta),
            "theta_star": vector_json(&forms.theta_star),
            "omega": vector_json(&forms.omega),
            "omega_star": vector_json(&forms.omega_star),
            "big_omega": vector_json(&forms.big_omega),
        }),
    );
    json!({
        "name": r.name,
        "dim": r.dim,
        "class_flags": r.class_flags,
        "omega_closed": r.omega_closed,
        "omega_star_closed": r.omega_star_closed,
        "isotropic_kahler": r.isotropic_kahler,
        "curvature_phi_kahler": r.curvature_phi_kahler,
        "invariants": r.invariants,
        "identity_verdicts": r.identity_verdicts,
        "all_applicable_pass": r.all_applicable_pass(),
        "tensors": Value::Object(tensors),
    })
}

pub fn to_json(r: &GeometryReport) -> String {
    // round-trip through Value so struct fields come out sorted too
    let value: Value = serde_json::from_str(&to_json_value(r).to_string()).expect("valid json");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

/// Identity verdicts only, one per line.
pub fn verdicts_text(r: &GeometryReport) -> String {
    let mut out = String::new();
    for (name, v) in &r.identity_verdicts {
        let status = match (v.applicable, v.passed) {
            (_, true) => "pass",
            (true, false) => "FAIL",
            (false, false) => "fail (n/a)",
        };
        let scope = if v.applicable { "" } else { " [not F11]" };
        out.push_str(&format!("{status:<10} {name}{scope}"));
        if let (false, Some(w)) = (v.passed, &v.witness) {
            out.push_str(&format!(" at {w:?}"));
        }
        out.push('\n');
    }
    out
}

fn nonzero_lines(out: &mut String, title: &str, t: &Tensor) {
    let entries: Vec<_> = t.entries().filter(|(_, v)| !num_traits::Zero::is_zero(*v)).collect();
    out.push_str(&format!("{title}: {} nonzero component(s)\n", entries.len()));
    for (idx, v) in entries {
        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
        out.push_str(&format!("  [{}] = {}\n", idx.join(","), scalar::format(v)));
    }
}

pub fn to_text(r: &GeometryReport) -> String {
    let inv = &r.invariants;
    let f = |s: &Scalar| scalar::format(s);
    let mut out = String::new();
    out.push_str(&format!("model: {} (dim {})\n\n", r.name, r.dim));
    out.push_str("classes\n");
    out.push_str(&format!("  F0: {}\n  F11: {}\n  normal (N = 0): {}\n  other basic classes: {}\n", r.class_flags.is_f0, r.class_flags.is_f11, r.class_flags.normal, r.class_flags.other_classes));
    out.push_str(&format!("  omega closed: {}\n  omega* closed: {}\n", r.omega_closed, r.omega_star_closed));
    out.push_str(&format!("  isotropic Kahler: {}\n  curvature of phi-Kahler type: {}\n\n", r.isotropic_kahler, r.curvature_phi_kahler));
    out.push_str("invariants\n");
    for (name, v) in [
        ("tau", &inv.tau),
        ("tau*", &inv.tau_star),
        ("tau**", &inv.tau_2star),
        ("omega(Omega)", &inv.omega_of_big_omega),
        ("|nabla phi|^2", &inv.norm_nabla_phi),
        ("|nabla eta|^2", &inv.norm_nabla_eta),
        ("|N|^2", &inv.norm_nijenhuis),
        ("Div(phi Omega)", &inv.div_phi_big_omega),
        ("rho(xi, xi)", &inv.rho_xi_xi),
        ("tr S", &inv.trace_s),
    ] {
        out.push_str(&format!("  {name:<16} {}\n", f(v)));
    }
    let forms = &r.structure.forms;
    let vec_str = |v: &[Scalar]| v.iter().map(f).collect::<Vec<_>>().join(" ");
    out.push_str("\none-forms (components on the basis)\n");
    out.push_str(&format!("  theta   {}\n  theta*  {}\n  omega   {}\n  omega*  {}\n  Omega   {}\n\n", vec_str(&forms.theta), vec_str(&forms.theta_star), vec_str(&forms.omega), vec_str(&forms.omega_star), vec_str(&forms.big_omega)));
    nonzero_lines(&mut out, "Gamma^k_ij (k, i, j)", r.connection.gamma());
    nonzero_lines(&mut out, "F(x, y, z)", &r.structure.f);
    nonzero_lines(&mut out, "R(x, y, z, u)", &r.curvature.r04);
    nonzero_lines(&mut out, "rho(y, z)", &r.curvature.ricci);
    nonzero_lines(&mut out, "S(x, y)", &r.structure.s);
    out.push_str("\nidentities\n");
    for line in verdicts_text(r).lines() {
        out.push_str(&format!("  {line}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::analyze;
    use crate::model_io::{generate_family, FamilyParams};
    use crate::scalar::int;

    #[test]
    fn json_is_stable_and_exact() {
        let m = generate_family(&FamilyParams::new(1, vec![int(2), int(3)]).unwrap()).unwrap();
        let r = analyze(&m).unwrap();
        let a = to_json(&r);
        assert_eq!(a, to_json(&analyze(&m).unwrap()));
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["invariants"]["tau"], "10");
        assert_eq!(v["invariants"]["tau_star"], "-12");
        assert_eq!(v["class_flags"]["is_f11"], true);
        assert_eq!(v["tensors"]["curvature"]["components"][1][0][0][1], "-4");
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn text_mentions_verdicts() {
        let m = generate_family(&FamilyParams::new(1, vec![int(1), int(1)]).unwrap()).unwrap();
        let t = to_text(&analyze(&m).unwrap());
        assert!(t.contains("isotropic Kahler: true"));
        assert!(t.contains("pass       norm_chain"));
    }
}
