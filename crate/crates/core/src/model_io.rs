//! Model files, the solvable example family and related generators.
//!
//! Text format (`#` starts a comment; blank lines are ignored):
//!
//! ```text
//! name: heisenberg
//! dim: 3
//! brackets:
//!   1 2 : 1 0 0        # [x1, x2] = x0, only pairs i < j
//! phi:                 # row a, column b holds phi^a_b, i.e. phi x_b = sum_a phi^a_b x_a
//!   0 0 0
//!   0 0 -1
//!   0 1 0
//! xi: 1 0 0
//! eta: 1 0 0
//! metric:
//!   1 0 0
//!   0 1 0
//!   0 0 -1
//! ```
//!
//! Entries are integers, `p/q` rationals or finite decimals. A JSON document
//! with the same fields (rationals as strings) is accepted as well.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_algebra::LieAlgebra;
use crate::scalar::{self, int, one, Scalar};
use crate::structure::{validate_structure, AcnModel};
use crate::tensor::{Tensor, Variance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    n: usize,
    lambda: Vec<Scalar>,
}

impl FamilyParams {
    pub fn new(n: usize, lambda: Vec<Scalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("n must be at least 1".into()));
        }
        if lambda.len() != 2 * n {
            return Err(Error::BadParams(format!(
                "expected {} lambda values for n = {n}, got {}",
                2 * n,
                lambda.len()
            )));
        }
        Ok(Self { n, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `λ_1 … λ_2n`; `lambda()[i - 1]` is `λ_i`.
    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }
}

fn family_structure(n: usize) -> (Tensor, Vec<Scalar>, Vec<Scalar>, Tensor) {
    let d = 2 * n + 1;
    let mut phi = Tensor::square(d, &[Variance::Up, Variance::Down]);
    for i in 1..=n {
        phi.set(&[i + n, i], one());
        phi.set(&[i, i + n], -one());
    }
    let xi = crate::structure::basis_vector(d, 0);
    let eta = xi.clone();
    let mut g = Tensor::square(d, &[Variance::Down, Variance::Down]);
    g.set(&[0, 0], one());
    for i in 1..=n {
        g.set(&[i, i], one());
        g.set(&[i + n, i + n], -one());
    }
    (phi, xi, eta, g)
}

/// The left-invariant structure on the solvable group with
/// `[x_i, x_0] = λ_i x_0`, basis `(x_0 = ξ, x_1, …, x_2n)`,
/// `φx_i = x_{i+n}`, `φx_{i+n} = −x_i`, `g = diag(1, 1…1, −1…−1)`.
pub fn generate_family(p: &FamilyParams) -> Result<AcnModel> {
    let n = p.n;
    let d = 2 * n + 1;
    let mut algebra = LieAlgebra::abelian(d);
    for (offset, lambda) in p.lambda.iter().enumerate() {
        let i = offset + 1;
        let mut coeffs = vec![Scalar::zero(); d];
        coeffs[0] = lambda.clone();
        algebra.set_bracket(i, 0, &coeffs)?;
    }
    let (phi, xi, eta, g) = family_structure(n);
    let name = format!(
        "family-n{n}-lambda({})",
        p.lambda.iter().map(scalar::format).collect::<Vec<_>>().join(",")
    );
    AcnModel::new(name, algebra, phi, xi, eta, g)
}

/// The 3-dimensional Heisenberg algebra `[x_1, x_2] = x_0` carrying the
/// family structure with `n = 1`.
pub fn heisenberg_model() -> AcnModel {
    let mut algebra = LieAlgebra::abelian(3);
    algebra
        .set_bracket(1, 2, &[int(1), int(0), int(0)])
        .expect("dimension 3");
    let (phi, xi, eta, g) = family_structure(1);
    AcnModel::new("heisenberg", algebra, phi, xi, eta, g).expect("consistent shapes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    #[serde(with = "scalar::serde_str::vec")]
    pub coefficients: Vec<Scalar>,
}

/// On-disk representation of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    #[serde(with = "scalar::serde_str::matrix")]
    pub phi: Vec<Vec<Scalar>>,
    #[serde(with = "scalar::serde_str::vec")]
    pub xi: Vec<Scalar>,
    #[serde(with = "scalar::serde_str::vec")]
    pub eta: Vec<Scalar>,
    #[serde(with = "scalar::serde_str::matrix")]
    pub metric: Vec<Vec<Scalar>>,
}

impl ModelFile {
    pub fn from_model(m: &AcnModel) -> Self {
        let d = m.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i..d {
                let coefficients = m.algebra.bracket_basis(i, j);
                if coefficients.iter().any(|c| !c.is_zero()) {
                    brackets.push(BracketEntry { i, j, coefficients });
                }
            }
        }
        Self {
            name: m.name.clone(),
            dim: d,
            brackets,
            phi: m.phi.rows(),
            xi: m.xi.clone(),
            eta: m.eta.clone(),
            metric: m.g.rows(),
        }
    }

    /// Builds the model without checking any axiom. Only shapes and the
    /// bracket listing rules are enforced.
    pub fn to_model(&self) -> Result<AcnModel> {
        let d = self.dim;
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::Validation(vec![format!(
                "dim = {d} is not of the form 2n + 1 with n >= 1"
            )]));
        }
        let mut problems = Vec::new();
        let check_len = |what: &str, len: usize, problems: &mut Vec<String>| {
            if len != d {
                problems.push(format!("{what} has length {len}, expected {d}"));
            }
        };
        check_len("phi", self.phi.len(), &mut problems);
        check_len("metric", self.metric.len(), &mut problems);
        for (r, row) in self.phi.iter().enumerate() {
            check_len(&format!("phi row {r}"), row.len(), &mut problems);
        }
        for (r, row) in self.metric.iter().enumerate() {
            check_len(&format!("metric row {r}"), row.len(), &mut problems);
        }
        check_len("xi", self.xi.len(), &mut problems);
        check_len("eta", self.eta.len(), &mut problems);
        let mut algebra = LieAlgebra::abelian(d);
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.brackets {
            if b.i >= d || b.j >= d {
                problems.push(format!("bracket ({}, {}) is out of range for dim {d}", b.i, b.j));
                continue;
            }
            if b.i > b.j {
                problems.push(format!("bracket ({}, {}) must be listed with i < j", b.i, b.j));
                continue;
            }
            if !seen.insert((b.i, b.j)) {
                problems.push(format!("bracket ({}, {}) is listed twice", b.i, b.j));
                continue;
            }
            if b.coefficients.len() != d {
                problems.push(format!(
                    "bracket ({}, {}) has {} coefficients, expected {d}",
                    b.i,
                    b.j,
                    b.coefficients.len()
                ));
                continue;
            }
            algebra.set_bracket(b.i, b.j, &b.coefficients)?;
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        AcnModel::new(
            self.name.clone(),
            algebra,
            Tensor::from_rows(&self.phi, [Variance::Up, Variance::Down])?,
            self.xi.clone(),
            self.eta.clone(),
            Tensor::from_rows(&self.metric, [Variance::Down, Variance::Down])?,
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let row = |v: &[Scalar]| v.iter().map(scalar::format).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        out.push_str(&format!("name: {}\n", self.name));
        out.push_str(&format!("dim: {}\n", self.dim));
        out.push_str("brackets:\n");
        for b in &self.brackets {
            out.push_str(&format!("  {} {} : {}\n", b.i, b.j, row(&b.coefficients)));
        }
        out.push_str("phi:\n");
        for r in &self.phi {
            out.push_str(&format!("  {}\n", row(r)));
        }
        out.push_str(&format!("xi: {}\n", row(&self.xi)));
        out.push_str(&format!("eta: {}\n", row(&self.eta)));
        out.push_str("metric:\n");
        for r in &self.metric {
            out.push_str(&format!("  {}\n", row(r)));
        }
        out
    }

    /// Parses either the text format or JSON (detected by a leading `{`).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            });
        }
        parse_text(text)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Brackets,
    Phi,
    Metric,
    Xi,
    Eta,
}

fn parse_row(line: usize, text: &str) -> Result<Vec<Scalar>> {
    text.split_whitespace()
        .map(|tok| {
            scalar::parse(tok).ok_or_else(|| Error::Parse {
                line,
                message: format!("invalid rational `{tok}`"),
            })
        })
        .collect()
}

fn parse_text(text: &str) -> Result<ModelFile> {
    let mut name = None;
    let mut dim = None;
    let mut brackets = Vec::new();
    let mut phi = Vec::new();
    let mut metric = Vec::new();
    let mut xi = None;
    let mut eta = None;
    let mut section = Section::None;
    let mut seen = std::collections::BTreeSet::new();

    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        if !indented {
            let (key, value) = content.split_once(':').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key: value` or a section header, found `{content}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate field `{key}`"),
                });
            }
            section = Section::None;
            match key {
                "name" => name = Some(value.to_string()),
                "dim" => {
                    dim = Some(value.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        message: format!("dim must be a positive integer, found `{value}`"),
                    })?)
                }
                "brackets" => section = Section::Brackets,
                "phi" => section = Section::Phi,
                "metric" => section = Section::Metric,
                "xi" => section = Section::Xi,
                "eta" => section = Section::Eta,
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown field `{other}`"),
                    })
                }
            }
            if !value.is_empty() {
                match section {
                    Section::Xi => xi = Some(parse_row(line, value)?),
                    Section::Eta => eta = Some(parse_row(line, value)?),
                    Section::Brackets | Section::Phi | Section::Metric => {
                        return Err(Error::Parse {
                            line,
                            message: format!("`{key}` rows go on the following indented lines"),
                        })
                    }
                    Section::None => {}
                }
                section = Section::None;
            }
            continue;
        }
        match section {
            Section::None => {
                return Err(Error::Parse {
                    line,
                    message: "indented line outside a section".into(),
                })
            }
            Section::Brackets => {
                let (pair, coeffs) = content.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    message: "bracket rows look like `i j : c0 c1 …`".into(),
                })?;
                let idx: Vec<usize> = pair
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse {
                        line,
                        message: format!("invalid bracket indices `{}`", pair.trim()),
                    })?;
                if idx.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected two bracket indices, found {}", idx.len()),
                    });
                }
                brackets.push(BracketEntry {
                    i: idx[0],
                    j: idx[1],
                    coefficients: parse_row(line, coeffs)?,
                });
            }
            Section::Phi => phi.push(parse_row(line, content)?),
            Section::Metric => metric.push(parse_row(line, content)?),
            Section::Xi => xi = Some(parse_row(line, content)?),
            Section::Eta => eta = Some(parse_row(line, content)?),
        }
    }

    let last = text.lines().count().max(1);
    let missing = |field: &str| Error::Parse {
        line: last,
        message: format!("missing field `{field}`"),
    };
    Ok(ModelFile {
        name: name.unwrap_or_default(),
        dim: dim.ok_or_else(|| missing("dim"))?,
        brackets,
        phi: if seen.contains("phi") { phi } else { return Err(missing("phi")) },
        xi: xi.ok_or_else(|| missing("xi"))?,
        eta: eta.ok_or_else(|| missing("eta"))?,
        metric: if seen.contains("metric") { metric } else { return Err(missing("metric")) },
    })
}

/// Itemized validation messages for a model: Lie algebra axioms followed by
/// the structure axioms.
pub fn validation_messages(m: &AcnModel) -> Vec<String> {
    let mut messages = m.algebra.validate().messages();
    messages.extend(validate_structure(m).messages());
    messages
}

/// Parses and fully validates a model.
pub fn parse_model(text: &str) -> Result<AcnModel> {
    let model = ModelFile::parse(text)?.to_model()?;
    let messages = validation_messages(&model);
    if !messages.is_empty() {
        return Err(Error::Validation(messages));
    }
    Ok(model)
}

pub fn serialize_model(m: &AcnModel) -> String {
    ModelFile::from_model(m).to_text()
}

pub fn serialize_model_json(m: &AcnModel) -> String {
    ModelFile::from_model(m).to_json()
}
