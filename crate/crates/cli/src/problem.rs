//! Problem-file parsing.
//!
//! The format is line-oriented. `#` starts a comment; blank lines are
//! skipped. Section headers begin with one of the keywords `field`, `vars`,
//! `relations`, `ideal <name>`, `element <name>`, `hom <name>`, `params`;
//! the lines that follow belong to the open section. Polynomials use the
//! text grammar of the kernel (`X^2 - Y*Z^2`). Unknown keys are errors.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use axtight_core::field::FieldSpec;
use axtight_core::monomial::OrderKind;
use axtight_core::parse;
use axtight_core::poly::{Ambient, Polynomial};
use axtight_core::MonomialOrder;

/// A parse failure with its line number (1-based).
#[derive(Debug, Clone)]
pub struct ProblemError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ProblemError {}

/// The target of a homomorphism block.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    /// `target axes <n> <vars...>`: a canonical axes ring.
    Axes { vars: Vec<String> },
    /// `target <vars...>` plus `relation <poly>` lines: a presented ring.
    Presented {
        vars: Vec<String>,
        relations: Vec<Polynomial>,
    },
    /// No target lines: the block only describes a change of variables for
    /// the problem ring itself.
    SelfRing,
}

/// Optional change of variables identifying a target with a canonical axes
/// ring: `axesvars`, `to_axes`, and `from_axes` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeBlock {
    pub axes_vars: Vec<String>,
    /// Image of each target variable in the axes variables.
    pub to_axes: Vec<(String, Polynomial)>,
    /// Image of each axes variable back in the target.
    pub from_axes: Vec<(String, Polynomial)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomBlock {
    pub target: TargetSpec,
    /// `<source var> -> <target polynomial>` lines.
    pub images: Vec<(String, Polynomial)>,
    pub change: Option<ChangeBlock>,
}

impl HomBlock {
    /// Ambient of the target ring (the problem ambient for `SelfRing`).
    pub fn target_ambient(&self, problem: &ProblemFile) -> Arc<Ambient> {
        match &self.target {
            TargetSpec::Axes { vars } => Ambient::new(vars.clone(), problem.field.clone()),
            TargetSpec::Presented { vars, .. } => {
                Ambient::new(vars.clone(), problem.field.clone())
            }
            TargetSpec::SelfRing => problem.ambient.clone(),
        }
    }
}

/// Search parameters from the `params` section. Command-line flags override
/// these; anything still unset falls back to built-in defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub e_max: Option<u32>,
    pub c_deg: Option<u32>,
    pub q0_max: Option<u32>,
    pub primes: Option<Vec<u64>>,
    pub order: Option<MonomialOrder>,
    pub budget: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub ambient: Arc<Ambient>,
    pub relations: Vec<Polynomial>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub elements: Vec<(String, Polynomial)>,
    pub homs: Vec<(String, HomBlock)>,
    pub params: Params,
}

impl ProblemFile {
    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, gens)| gens.as_slice())
    }

    pub fn element(&self, name: &str) -> Option<&Polynomial> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn hom(&self, name: &str) -> Option<&HomBlock> {
        self.homs.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }
}

const SECTION_KEYWORDS: &[&str] = &[
    "field", "vars", "relations", "ideal", "element", "hom", "params",
];

enum Section {
    None,
    Relations,
    Ideal(String),
    Element(String),
    Hom(String),
    Params,
}

struct RawHom {
    name: String,
    target: Option<TargetSpec>,
    relations: Vec<(usize, String)>,
    images: Vec<(usize, String, String)>,
    axes_vars: Option<Vec<String>>,
    to_axes: Vec<(usize, String, String)>,
    from_axes: Vec<(usize, String, String)>,
    target_line: usize,
}

fn err(line: usize, message: impl Into<String>) -> ProblemError {
    ProblemError {
        line,
        message: message.into(),
    }
}

fn parse_field(line: usize, token: &str) -> Result<FieldSpec, ProblemError> {
    match token {
        "Q" | "rationals" => Ok(FieldSpec::Rationals),
        other => {
            let p = other
                .strip_prefix("F_")
                .or_else(|| other.strip_prefix("F"))
                .ok_or_else(|| err(line, format!("unknown field `{other}` (use F_p or Q)")))?;
            let p: u64 = p
                .parse()
                .map_err(|_| err(line, format!("invalid prime in field `{other}`")))?;
            FieldSpec::prime(p).map_err(|e| err(line, e.to_string()))
        }
    }
}

fn parse_poly_at(
    line: usize,
    src: &str,
    ambient: &Arc<Ambient>,
) -> Result<Polynomial, ProblemError> {
    parse::polynomial(src, ambient).map_err(|e| err(line, e.to_string()))
}

fn split_image_line(line_text: &str) -> Option<(String, String)> {
    let (lhs, rhs) = line_text.split_once("->")?;
    Some((lhs.trim().to_string(), rhs.trim().to_string()))
}

fn check_var_names(line: usize, names: &[String]) -> Result<(), ProblemError> {
    if names.is_empty() {
        return Err(err(line, "expected at least one variable"));
    }
    let mut seen = BTreeSet::new();
    for n in names {
        if !n
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
            || n.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(true)
        {
            return Err(err(line, format!("invalid variable name `{n}`")));
        }
        if !seen.insert(n.clone()) {
            return Err(err(line, format!("duplicate variable `{n}`")));
        }
    }
    Ok(())
}

/// Parses a problem file. The grammar is strict: unknown section keywords,
/// unknown parameter keys, undeclared variables, and malformed polynomials
/// are all errors with their line number.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut field: Option<(usize, FieldSpec)> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut relations_src: Vec<(usize, String)> = Vec::new();
    let mut ideals_src: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    let mut elements_src: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    let mut raw_homs: Vec<RawHom> = Vec::new();
    let mut params = Params::default();
    let mut params_seen: BTreeSet<String> = BTreeSet::new();
    let mut section = Section::None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line_text = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line_text.is_empty() {
            continue;
        }
        let mut tokens = line_text.split_whitespace();
        let head = tokens.next().unwrap();

        // section headers
        if SECTION_KEYWORDS.contains(&head) {
            match head {
                "field" => {
                    if field.is_some() {
                        return Err(err(line_no, "duplicate `field` section"));
                    }
                    let spec = tokens
                        .next()
                        .ok_or_else(|| err(line_no, "expected a field after `field`"))?;
                    if tokens.next().is_some() {
                        return Err(err(line_no, "trailing tokens after field"));
                    }
                    field = Some((line_no, parse_field(line_no, spec)?));
                    section = Section::None;
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(err(line_no, "duplicate `vars` section"));
                    }
                    let names: Vec<String> = tokens.map(|t| t.to_string()).collect();
                    check_var_names(line_no, &names)?;
                    vars = Some(names);
                    section = Section::None;
                }
                "relations" => {
                    if tokens.next().is_some() {
                        return Err(err(line_no, "`relations` takes no arguments"));
                    }
                    section = Section::Relations;
                }
                "ideal" => {
                    let name = tokens
                        .next()
                        .ok_or_else(|| err(line_no, "expected a name after `ideal`"))?
                        .to_string();
                    if ideals_src.iter().any(|(n, _)| *n == name) {
                        return Err(err(line_no, format!("duplicate ideal `{name}`")));
                    }
                    ideals_src.push((name.clone(), Vec::new()));
                    section = Section::Ideal(name);
                }
                "element" => {
                    let name = tokens
                        .next()
                        .ok_or_else(|| err(line_no, "expected a name after `element`"))?
                        .to_string();
                    if elements_src.iter().any(|(n, _)| *n == name) {
                        return Err(err(line_no, format!("duplicate element `{name}`")));
                    }
                    elements_src.push((name.clone(), Vec::new()));
                    section = Section::Element(name);
                }
                "hom" => {
                    let name = tokens
                        .next()
                        .ok_or_else(|| err(line_no, "expected a name after `hom`"))?
                        .to_string();
                    if raw_homs.iter().any(|h| h.name == name) {
                        return Err(err(line_no, format!("duplicate hom `{name}`")));
                    }
                    raw_homs.push(RawHom {
                        name: name.clone(),
                        target: None,
                        relations: Vec::new(),
                        images: Vec::new(),
                        axes_vars: None,
                        to_axes: Vec::new(),
                        from_axes: Vec::new(),
                        target_line: line_no,
                    });
                    section = Section::Hom(name);
                }
                "params" => section = Section::Params,
                _ => unreachable!(),
            }
            continue;
        }

        // content lines
        match &section {
            Section::None => {
                return Err(err(
                    line_no,
                    format!("unexpected line outside any section: `{line_text}`"),
                ))
            }
            Section::Relations => relations_src.push((line_no, line_text.to_string())),
            Section::Ideal(name) => {
                let slot = ideals_src.iter_mut().find(|(n, _)| n == name).unwrap();
                slot.1.push((line_no, line_text.to_string()));
            }
            Section::Element(name) => {
                let slot = elements_src.iter_mut().find(|(n, _)| n == name).unwrap();
                slot.1.push((line_no, line_text.to_string()));
            }
            Section::Hom(name) => {
                let hom = raw_homs.iter_mut().find(|h| h.name == *name).unwrap();
                match head {
                    "target" => {
                        if hom.target.is_some() {
                            return Err(err(line_no, "duplicate `target` line"));
                        }
                        let rest: Vec<String> = tokens.map(|t| t.to_string()).collect();
                        if rest.first().map(|s| s.as_str()) == Some("axes") {
                            let n: usize = rest
                                .get(1)
                                .ok_or_else(|| err(line_no, "expected branch count"))?
                                .parse()
                                .map_err(|_| err(line_no, "invalid branch count"))?;
                            let names: Vec<String> = rest[2..].to_vec();
                            if names.len() != n {
                                return Err(err(
                                    line_no,
                                    format!("expected {n} branch variables, found {}", names.len()),
                                ));
                            }
                            check_var_names(line_no, &names)?;
                            hom.target = Some(TargetSpec::Axes { vars: names });
                        } else {
                            check_var_names(line_no, &rest)?;
                            hom.target = Some(TargetSpec::Presented {
                                vars: rest,
                                relations: Vec::new(),
                            });
                        }
                        hom.target_line = line_no;
                    }
                    "relation" => {
                        let rest = line_text["relation".len()..].trim().to_string();
                        hom.relations.push((line_no, rest));
                    }
                    "axesvars" => {
                        let names: Vec<String> = tokens.map(|t| t.to_string()).collect();
                        check_var_names(line_no, &names)?;
                        hom.axes_vars = Some(names);
                    }
                    "to_axes" => {
                        let rest = line_text["to_axes".len()..].trim();
                        let (var, img) = split_image_line(rest)
                            .ok_or_else(|| err(line_no, "expected `<var> -> <polynomial>`"))?;
                        hom.to_axes.push((line_no, var, img));
                    }
                    "from_axes" => {
                        let rest = line_text["from_axes".len()..].trim();
                        let (var, img) = split_image_line(rest)
                            .ok_or_else(|| err(line_no, "expected `<var> -> <polynomial>`"))?;
                        hom.from_axes.push((line_no, var, img));
                    }
                    _ => {
                        let (var, img) = split_image_line(line_text).ok_or_else(|| {
                            err(line_no, format!("unknown hom line `{line_text}`"))
                        })?;
                        hom.images.push((line_no, var, img));
                    }
                }
            }
            Section::Params => {
                let value: Vec<&str> = tokens.collect();
                let one = |what: &str| -> Result<String, ProblemError> {
                    if value.len() != 1 {
                        Err(err(line_no, format!("`{what}` takes one value")))
                    } else {
                        Ok(value[0].to_string())
                    }
                };
                if !params_seen.insert(head.to_string()) {
                    return Err(err(line_no, format!("duplicate parameter `{head}`")));
                }
                match head {
                    "e_max" => {
                        params.e_max = Some(
                            one("e_max")?
                                .parse()
                                .map_err(|_| err(line_no, "invalid e_max"))?,
                        )
                    }
                    "c_deg" => {
                        params.c_deg = Some(
                            one("c_deg")?
                                .parse()
                                .map_err(|_| err(line_no, "invalid c_deg"))?,
                        )
                    }
                    "q0_max" => {
                        params.q0_max = Some(
                            one("q0_max")?
                                .parse()
                                .map_err(|_| err(line_no, "invalid q0_max"))?,
                        )
                    }
                    "budget" => {
                        params.budget = Some(
                            one("budget")?
                                .parse()
                                .map_err(|_| err(line_no, "invalid budget"))?,
                        )
                    }
                    "primes" => {
                        let list = one("primes")?;
                        let primes = list
                            .split(',')
                            .map(|t| t.trim().parse::<u64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| err(line_no, "invalid prime list"))?;
                        params.primes = Some(primes);
                    }
                    "order" => {
                        params.order = Some(parse_order(&one("order")?, None).map_err(
                            |message| err(line_no, message),
                        )?);
                    }
                    other => {
                        return Err(err(line_no, format!("unknown parameter `{other}`")))
                    }
                }
            }
        }
    }

    let (_, field) = field.ok_or_else(|| err(0, "missing `field` section"))?;
    let vars = vars.ok_or_else(|| err(0, "missing `vars` section"))?;
    let ambient = Ambient::new(vars.clone(), field.clone());

    let relations = relations_src
        .iter()
        .map(|(line, src)| parse_poly_at(*line, src, &ambient))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ideals = Vec::new();
    for (name, lines) in &ideals_src {
        if lines.is_empty() {
            return Err(err(0, format!("ideal `{name}` has no generators")));
        }
        let gens = lines
            .iter()
            .map(|(line, src)| parse_poly_at(*line, src, &ambient))
            .collect::<Result<Vec<_>, _>>()?;
        ideals.push((name.clone(), gens));
    }
    let mut elements = Vec::new();
    for (name, lines) in &elements_src {
        match lines.as_slice() {
            [(line, src)] => elements.push((name.clone(), parse_poly_at(*line, src, &ambient)?)),
            [] => return Err(err(0, format!("element `{name}` has no polynomial"))),
            _ => {
                return Err(err(
                    lines[1].0,
                    format!("element `{name}` has more than one polynomial"),
                ))
            }
        }
    }

    let mut problem = ProblemFile {
        field: field.clone(),
        vars,
        ambient: ambient.clone(),
        relations,
        ideals,
        elements,
        homs: Vec::new(),
        params,
    };

    for raw in &raw_homs {
        let target = match &raw.target {
            None => {
                if !raw.relations.is_empty() {
                    return Err(err(
                        raw.relations[0].0,
                        "`relation` lines need a `target` line",
                    ));
                }
                TargetSpec::SelfRing
            }
            Some(TargetSpec::Axes { vars }) => {
                if !raw.relations.is_empty() {
                    return Err(err(
                        raw.relations[0].0,
                        "axes targets carry no relation lines",
                    ));
                }
                TargetSpec::Axes { vars: vars.clone() }
            }
            Some(TargetSpec::Presented { vars, .. }) => {
                let target_ambient = Ambient::new(vars.clone(), field.clone());
                let relations = raw
                    .relations
                    .iter()
                    .map(|(line, src)| parse_poly_at(*line, src, &target_ambient))
                    .collect::<Result<Vec<_>, _>>()?;
                TargetSpec::Presented {
                    vars: vars.clone(),
                    relations,
                }
            }
            Some(TargetSpec::SelfRing) => unreachable!(),
        };
        let block_probe = HomBlock {
            target: target.clone(),
            images: Vec::new(),
            change: None,
        };
        let target_ambient = block_probe.target_ambient(&problem);

        let mut images = Vec::new();
        for (line, var, img) in &raw.images {
            if !problem.vars.contains(var) {
                return Err(err(*line, format!("`{var}` is not a problem variable")));
            }
            if images.iter().any(|(v, _)| v == var) {
                return Err(err(*line, format!("duplicate image for `{var}`")));
            }
            images.push((var.clone(), parse_poly_at(*line, img, &target_ambient)?));
        }

        let change = match (&raw.axes_vars, raw.to_axes.is_empty(), raw.from_axes.is_empty()) {
            (None, true, true) => None,
            (Some(axes_vars), _, _) => {
                let axes_ambient = Ambient::new(axes_vars.clone(), field.clone());
                let mut to_axes = Vec::new();
                for (line, var, img) in &raw.to_axes {
                    if !target_ambient.vars.contains(var) {
                        return Err(err(*line, format!("`{var}` is not a target variable")));
                    }
                    to_axes.push((var.clone(), parse_poly_at(*line, img, &axes_ambient)?));
                }
                let mut from_axes = Vec::new();
                for (line, var, img) in &raw.from_axes {
                    if !axes_vars.contains(var) {
                        return Err(err(*line, format!("`{var}` is not an axes variable")));
                    }
                    from_axes.push((var.clone(), parse_poly_at(*line, img, &target_ambient)?));
                }
                Some(ChangeBlock {
                    axes_vars: axes_vars.clone(),
                    to_axes,
                    from_axes,
                })
            }
            (None, _, _) => {
                return Err(err(
                    raw.target_line,
                    "`to_axes`/`from_axes` lines need an `axesvars` line",
                ))
            }
        };

        problem.homs.push((
            raw.name.clone(),
            HomBlock {
                target,
                images,
                change,
            },
        ));
    }

    Ok(problem)
}

/// Parses `degrevlex`, `deglex`, or `lex`, optionally with a variable
/// priority suffix like `lex:Z,X`. The priority refers to problem variables
/// when `vars` is given.
pub fn parse_order(text: &str, vars: Option<&[String]>) -> Result<MonomialOrder, String> {
    let (kind_text, priority_text) = match text.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (text, None),
    };
    let kind = match kind_text {
        "degrevlex" => OrderKind::DegRevLex,
        "deglex" => OrderKind::DegLex,
        "lex" => OrderKind::Lex,
        other => return Err(format!("unknown order `{other}`")),
    };
    match priority_text {
        None => Ok(MonomialOrder::new(kind)),
        Some(p) => {
            let vars = vars.ok_or("a variable priority needs the problem context")?;
            let priority = p
                .split(',')
                .map(|name| {
                    vars.iter()
                        .position(|v| v == name.trim())
                        .ok_or_else(|| format!("unknown variable `{}` in order", name.trim()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MonomialOrder::with_priority(kind, priority))
        }
    }
}

impl fmt::Display for ProblemFile {
    /// Canonical rendering; parsing the output yields an identical structure.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            FieldSpec::Prime(p) => writeln!(f, "field F_{p}")?,
            FieldSpec::Rationals => writeln!(f, "field Q")?,
        }
        writeln!(f, "vars {}", self.vars.join(" "))?;
        if !self.relations.is_empty() {
            writeln!(f, "relations")?;
            for r in &self.relations {
                writeln!(f, "  {r}")?;
            }
        }
        for (name, gens) in &self.ideals {
            writeln!(f, "ideal {name}")?;
            for g in gens {
                writeln!(f, "  {g}")?;
            }
        }
        for (name, poly) in &self.elements {
            writeln!(f, "element {name}")?;
            writeln!(f, "  {poly}")?;
        }
        for (name, hom) in &self.homs {
            writeln!(f, "hom {name}")?;
            match &hom.target {
                TargetSpec::Axes { vars } => {
                    writeln!(f, "  target axes {} {}", vars.len(), vars.join(" "))?
                }
                TargetSpec::Presented { vars, relations } => {
                    writeln!(f, "  target {}", vars.join(" "))?;
                    for r in relations {
                        writeln!(f, "  relation {r}")?;
                    }
                }
                TargetSpec::SelfRing => {}
            }
            for (var, img) in &hom.images {
                writeln!(f, "  {var} -> {img}")?;
            }
            if let Some(change) = &hom.change {
                writeln!(f, "  axesvars {}", change.axes_vars.join(" "))?;
                for (var, img) in &change.to_axes {
                    writeln!(f, "  to_axes {var} -> {img}")?;
                }
                for (var, img) in &change.from_axes {
                    writeln!(f, "  from_axes {var} -> {img}")?;
                }
            }
        }
        let p = &self.params;
        if p != &Params::default() {
            writeln!(f, "params")?;
            if let Some(v) = p.e_max {
                writeln!(f, "  e_max {v}")?;
            }
            if let Some(v) = p.c_deg {
                writeln!(f, "  c_deg {v}")?;
            }
            if let Some(v) = p.q0_max {
                writeln!(f, "  q0_max {v}")?;
            }
            if let Some(v) = &p.primes {
                writeln!(
                    f,
                    "  primes {}",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )?;
            }
            if let Some(v) = &p.order {
                let kind = match v.kind {
                    OrderKind::DegRevLex => "degrevlex",
                    OrderKind::DegLex => "deglex",
                    OrderKind::Lex => "lex",
                };
                match &v.priority {
                    None => writeln!(f, "  order {kind}")?,
                    Some(idx) => {
                        let names: Vec<&str> =
                            idx.iter().map(|&i| self.vars[i].as_str()).collect();
                        writeln!(f, "  order {kind}:{}", names.join(","))?;
                    }
                }
            }
            if let Some(v) = p.budget {
                writeln!(f, "  budget {v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str = include_str!("../problems/fermat_f7.prob");

    #[test]
    fn parses_the_fermat_file() {
        let p = parse_problem(FERMAT).unwrap();
        assert_eq!(p.field, FieldSpec::prime(7).unwrap());
        assert_eq!(p.vars, vec!["X", "Y", "Z"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.ideal("I").unwrap().len(), 2);
        assert_eq!(p.element("z2").unwrap().to_string(), "Z^2");
        let hom = p.hom("xi").unwrap();
        assert!(matches!(&hom.target, TargetSpec::Axes { vars } if vars == &["U", "V"]));
        assert_eq!(hom.images.len(), 3);
        assert_eq!(p.params.e_max, Some(3));
    }

    #[test]
    fn empty_relations_means_polynomial_ring() {
        let p = parse_problem("field F_5\nvars X Y\nideal I\n  X\nelement f\n  Y\n").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn print_then_parse_is_identity() {
        for text in [
            FERMAT,
            include_str!("../problems/intro_cusp_f5.prob"),
            include_str!("../problems/two_lines_f5.prob"),
            include_str!("../problems/special_f5.prob"),
            include_str!("../problems/regular_q.prob"),
        ] {
            let first = parse_problem(text).unwrap();
            let printed = first.to_string();
            let second = parse_problem(&printed).unwrap();
            assert_eq!(first.field, second.field);
            assert_eq!(first.vars, second.vars);
            assert_eq!(first.relations, second.relations);
            assert_eq!(first.ideals, second.ideals);
            assert_eq!(first.elements, second.elements);
            assert_eq!(first.homs, second.homs);
            assert_eq!(first.params, second.params);
            // canonical form is a fixed point
            assert_eq!(printed, second.to_string());
        }
    }

    #[test]
    fn malformed_exponent_reports_its_line() {
        let err = parse_problem("field F_7\nvars X\nelement f\n  X^\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("exponent"));
    }

    #[test]
    fn undeclared_variable_is_an_error() {
        let err = parse_problem("field F_7\nvars X\nelement f\n  X + W\n").unwrap_err();
        assert!(err.message.contains("undeclared variable `W`"));
    }

    #[test]
    fn fractional_coefficients_need_the_rationals() {
        let err = parse_problem("field F_7\nvars X\nelement f\n  1/2*X\n").unwrap_err();
        assert!(err.message.contains("not in field"));
        assert!(parse_problem("field Q\nvars X\nelement f\n  1/2*X\n").is_ok());
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = parse_problem("field F_7\nvars X\nparams\n  fuel 3\n").unwrap_err();
        assert!(err.message.contains("unknown parameter `fuel`"));
        let err = parse_problem("field F_7\nvars X\nwibble\n").unwrap_err();
        assert!(err.message.contains("unexpected line"));
    }

    #[test]
    fn order_strings_round_trip() {
        let vars: Vec<String> = vec!["X".into(), "Z".into()];
        let lex = parse_order("lex:Z,X", Some(&vars)).unwrap();
        assert_eq!(lex.priority, Some(vec![1, 0]));
        assert!(parse_order("sugar", None).is_err());
        assert!(parse_order("lex:W", Some(&vars)).is_err());
    }
}
