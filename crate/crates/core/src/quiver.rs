//! Quivers with relations and their bound path algebras.
//!
//! Text format (whitespace-insensitive, `;` ends a section):
//!
//! ```text
//! vertices: 1 2 3;
//! arrows: a: 1 -> 2, b: 2 -> 3;
//! relations: b*a, x*x + 2*y*y;
//! bound: 12;
//! ```
//!
//! A path `b*a` is the algebra product `b a`, i.e. function composition read
//! right to left: `a` first, then `b`. So `b*a` exists when `a` ends where `b`
//! starts, and the trivial path `e_v` satisfies `e_target * p * e_source = p`.
//! With this convention the projective `A e_v` is the projective at `v`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, QuiverProvenance};
use crate::error::{Diagnostic, Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

pub const DEFAULT_NILPOTENCY_BOUND: usize = 12;
const MAX_PATHS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    /// Arrow names as written; `["b", "a"]` is the product `b*a`.
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_bound: Option<usize>,
}

// ---------------------------------------------------------------- tokenizer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Comma,
    Star,
    Plus,
    Minus,
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token>, Vec<Diagnostic>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok| out.push(Token { tok, line: l0, column: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(t) = single {
            push(t);
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                push(Tok::Arrow);
                i += 2;
                col += 2;
            } else {
                push(Tok::Minus);
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_alphanumeric() || c == '_' || c == '\'' || c == '.' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '\'' | '.'))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            push(Tok::Word(word));
            continue;
        }
        errors.push(Diagnostic { line, column: col, message: format!("unexpected character {c:?}") });
        i += 1;
        col += 1;
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    errors: Vec<Diagnostic>,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&mut self, message: impl Into<String>) {
        let (line, column) = self.here();
        self.errors.push(Diagnostic { line, column, message: message.into() });
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<(String, usize, usize)> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Word(w), line, column }) => {
                let r = (w.clone(), *line, *column);
                self.pos += 1;
                Some(r)
            }
            _ => None,
        }
    }

    fn skip_section(&mut self) {
        while let Some(t) = self.peek().cloned() {
            self.pos += 1;
            if t == Tok::Semi {
                break;
            }
        }
    }

    fn end_section(&mut self) -> bool {
        match self.peek() {
            None => true,
            Some(Tok::Semi) => {
                self.pos += 1;
                true
            }
            Some(other) => {
                let msg = format!("expected ';', found {other:?}");
                self.error(msg);
                self.skip_section();
                false
            }
        }
    }
}

/// Parses the text format, reporting every diagnostic with its position.
pub fn parse_quiver_spec(text: &str) -> Result<QuiverSpec> {
    let toks = tokenize(text).map_err(Error::QuiverSyntax)?;
    let end = toks.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { toks, pos: 0, errors: Vec::new(), end };
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut bound = None;
    let mut positions: HashMap<String, (usize, usize)> = HashMap::new();

    while p.peek().is_some() {
        if p.eat(&Tok::Semi) {
            continue;
        }
        let Some((key, _, _)) = p.word() else {
            p.error("expected a section name");
            p.skip_section();
            continue;
        };
        if !p.eat(&Tok::Colon) {
            p.error(format!("expected ':' after {key:?}"));
            p.skip_section();
            continue;
        }
        match key.as_str() {
            "vertices" => {
                while let Some((v, l, c)) = p.word() {
                    positions.entry(format!("v:{v}")).or_insert((l, c));
                    vertices.push(v);
                    p.eat(&Tok::Comma);
                }
                p.end_section();
            }
            "arrows" => {
                loop {
                    let Some((name, l, c)) = p.word() else { break };
                    let ok = p.eat(&Tok::Colon);
                    let src = if ok { p.word() } else { None };
                    let ok = src.is_some() && p.eat(&Tok::Arrow);
                    let tgt = if ok { p.word() } else { None };
                    match (src, tgt) {
                        (Some((s, sl, sc)), Some((t, tl, tc))) => {
                            positions.insert(format!("a:{name}"), (l, c));
                            positions.entry(format!("s:{name}")).or_insert((sl, sc));
                            positions.entry(format!("t:{name}")).or_insert((tl, tc));
                            arrows.push(Arrow { name, source: s, target: t });
                        }
                        _ => {
                            p.error(format!("arrow {name:?} must look like `{name}: u -> v`"));
                            p.skip_section();
                            break;
                        }
                    }
                    if !p.eat(&Tok::Comma) {
                        p.end_section();
                        break;
                    }
                }
                if p.peek() == Some(&Tok::Semi) {
                    p.pos += 1;
                }
            }
            "relations" => {
                if p.eat(&Tok::Semi) || p.peek().is_none() {
                    continue;
                }
                loop {
                    match parse_relation(&mut p) {
                        Some(r) => relations.push(r),
                        None => {
                            p.skip_section();
                            break;
                        }
                    }
                    if !p.eat(&Tok::Comma) {
                        p.end_section();
                        break;
                    }
                }
            }
            "bound" => {
                match p.word().and_then(|(w, _, _)| w.parse::<usize>().ok()) {
                    Some(b) => bound = Some(b),
                    None => p.error("bound must be a nonnegative integer"),
                }
                p.end_section();
            }
            other => {
                p.error(format!("unknown section {other:?}"));
                p.skip_section();
            }
        }
    }
    let spec = QuiverSpec { vertices, arrows, relations, nilpotency_bound: bound };
    let mut errors = p.errors;
    if let Err(Error::QuiverSyntax(sem)) = spec.validate() {
        for mut d in sem {
            // Attach the best position we recorded for the offending name.
            if let Some(key) = d.message.split('`').nth(1) {
                if let Some(&(l, c)) = positions.get(key) {
                    d.line = l;
                    d.column = c;
                }
            }
            d.message = d.message.replace('`', "");
            errors.push(d);
        }
    }
    if errors.is_empty() {
        Ok(spec)
    } else {
        Err(Error::QuiverSyntax(errors))
    }
}

fn parse_relation(p: &mut Parser) -> Option<Vec<Term>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    if p.eat(&Tok::Minus) {
        sign = -1;
    } else {
        p.eat(&Tok::Plus);
    }
    loop {
        let mut coeff = sign;
        let mut path = Vec::new();
        let Some((w, _, _)) = p.word() else {
            p.error("expected a path");
            return None;
        };
        if let Ok(n) = w.parse::<i64>() {
            coeff *= n;
            if !p.eat(&Tok::Star) {
                p.error("expected '*' after a coefficient");
                return None;
            }
        } else {
            path.push(w);
        }
        loop {
            if !path.is_empty() && !p.eat(&Tok::Star) {
                break;
            }
            match p.word() {
                Some((w, _, _)) if w.parse::<i64>().is_err() => path.push(w),
                _ => {
                    p.error("expected an arrow name");
                    return None;
                }
            }
        }
        terms.push(Term { coeff, path });
        if p.eat(&Tok::Plus) {
            sign = 1;
        } else if p.eat(&Tok::Minus) {
            sign = -1;
        } else {
            return Some(terms);
        }
    }
}

impl QuiverSpec {
    pub fn parse(text: &str) -> Result<Self> {
        parse_quiver_spec(text)
    }

    /// Semantic checks: names resolve, relation paths compose and have
    /// length at least two.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let diag = |m: String| Diagnostic { line: 0, column: 0, message: m };
        let mut seen = HashMap::new();
        for v in &self.vertices {
            if seen.insert(v.as_str(), ()).is_some() {
                errors.push(diag(format!("duplicate vertex `v:{v}`")));
            }
        }
        let mut arrow_ends = HashMap::new();
        for a in &self.arrows {
            if a.name.parse::<i64>().is_ok() || a.name.starts_with(|c: char| c.is_ascii_digit()) {
                errors.push(diag(format!("arrow name `a:{}` must start with a letter", a.name)));
            }
            if !seen.contains_key(a.source.as_str()) {
                errors.push(diag(format!(
                    "arrow `s:{}` has unknown source vertex {}",
                    a.name, a.source
                )));
            }
            if !seen.contains_key(a.target.as_str()) {
                errors.push(diag(format!(
                    "arrow `t:{}` has unknown target vertex {}",
                    a.name, a.target
                )));
            }
            if arrow_ends.insert(a.name.as_str(), (a.source.as_str(), a.target.as_str())).is_some() {
                errors.push(diag(format!("duplicate arrow `a:{}`", a.name)));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            for t in rel {
                let shown = t.path.join("*");
                if t.path.len() < 2 {
                    errors.push(diag(format!(
                        "relation {ri}: path {shown} has length below 2 (not admissible)"
                    )));
                }
                for name in &t.path {
                    if !arrow_ends.contains_key(name.as_str()) {
                        errors.push(diag(format!("relation {ri}: unknown arrow {name}")));
                    }
                }
                for w in t.path.windows(2) {
                    if let (Some(&(s, _)), Some(&(_, t2))) =
                        (arrow_ends.get(w[0].as_str()), arrow_ends.get(w[1].as_str()))
                    {
                        if s != t2 {
                            errors.push(diag(format!(
                                "relation {ri}: path {shown} is not composable at {}*{}",
                                w[0], w[1]
                            )));
                        }
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::QuiverSyntax(errors))
        }
    }
}

// ------------------------------------------------------------- path algebra

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Path {
    Trivial(usize),
    /// Arrow indices as written, leftmost applied last.
    Arrows(Vec<usize>),
}

struct PathSpace {
    arrows: Vec<(usize, usize)>,
    names: Vec<String>,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathSpace {
    fn source(&self, p: &Path) -> usize {
        match p {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => self.arrows[*a.last().unwrap()].0,
        }
    }

    fn target(&self, p: &Path) -> usize {
        match p {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => self.arrows[a[0]].1,
        }
    }

    fn len(p: &Path) -> usize {
        match p {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    /// `p * q`, or `None` when they do not compose.
    fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.source(p) != self.target(q) {
            return None;
        }
        Some(match (p, q) {
            (Path::Trivial(_), q) => q.clone(),
            (p, Path::Trivial(_)) => p.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut v = a.clone();
                v.extend(b);
                Path::Arrows(v)
            }
        })
    }

    /// All paths of length at most `max`, canonically ordered.
    fn build(vertices: usize, arrows: Vec<(usize, usize)>, names: Vec<String>, max: usize) -> Result<Self> {
        let mut paths: Vec<Path> = (0..vertices).map(Path::Trivial).collect();
        let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
        let mut len = 1;
        while len <= max && !layer.is_empty() {
            layer.sort_by(|x, y| {
                let nx: Vec<&str> = x.iter().map(|&i| names[i].as_str()).collect();
                let ny: Vec<&str> = y.iter().map(|&i| names[i].as_str()).collect();
                nx.cmp(&ny)
            });
            paths.extend(layer.iter().cloned().map(Path::Arrows));
            if paths.len() > MAX_PATHS {
                return Err(Error::NonAdmissible(format!(
                    "more than {MAX_PATHS} paths of length <= {max}"
                )));
            }
            let mut next = Vec::new();
            for p in &layer {
                let src = arrows[*p.last().unwrap()].0;
                for (a, &(_, t)) in arrows.iter().enumerate() {
                    if t == src {
                        let mut q = p.clone();
                        q.push(a);
                        next.push(q);
                    }
                }
            }
            layer = next;
            len += 1;
        }
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PathSpace { arrows, names, paths, index })
    }

    fn label(&self, p: &Path, vertex_names: &[String]) -> String {
        match p {
            Path::Trivial(v) => format!("e{}", vertex_names[*v]),
            Path::Arrows(a) => a.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("*"),
        }
    }
}

type Relation<F> = Vec<(<F as Field>::Elem, Path)>;

/// Elements `p * rel * q` whose every term has length at most `max_len`,
/// as coordinate vectors over the paths of `space`.
fn ideal_products<F: Field>(
    field: &F,
    space: &PathSpace,
    relations: &[Relation<F>],
    max_len: usize,
    truncate_at: Option<usize>,
) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    let n = space.paths.len();
    for rel in relations {
        let min_len = rel.iter().map(|(_, t)| PathSpace::len(t)).min().unwrap_or(0);
        let max_rel = rel.iter().map(|(_, t)| PathSpace::len(t)).max().unwrap_or(0);
        let limit = if truncate_at.is_some() { min_len } else { max_rel };
        for p in &space.paths {
            let lp = PathSpace::len(p);
            if lp + limit > max_len {
                continue;
            }
            for q in &space.paths {
                let lq = PathSpace::len(q);
                if lp + lq + limit > max_len {
                    continue;
                }
                let mut v = vec![field.zero(); n];
                let mut any = false;
                for (c, t) in rel {
                    let Some(pt) = space.compose(p, t) else { continue };
                    let Some(ptq) = space.compose(&pt, q) else { continue };
                    if let Some(cut) = truncate_at {
                        if PathSpace::len(&ptq) >= cut {
                            continue;
                        }
                    }
                    let idx = space.index[&ptq];
                    v[idx] = field.add(&v[idx], c);
                    any = true;
                }
                if any && v.iter().any(|x| !field.is_zero(x)) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Builds `kQ/I` after certifying that `I` contains a power of the arrow
/// ideal (searched up to `nilpotency_bound + 1`).
pub fn build_path_algebra<F: Field>(q: &QuiverSpec, field: &F) -> Result<Algebra<F>> {
    q.validate()?;
    let bound = q.nilpotency_bound.unwrap_or(DEFAULT_NILPOTENCY_BOUND);
    let vidx: HashMap<&str, usize> =
        q.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let aidx: HashMap<&str, usize> =
        q.arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
    let arrows: Vec<(usize, usize)> = q
        .arrows
        .iter()
        .map(|a| (vidx[a.source.as_str()], vidx[a.target.as_str()]))
        .collect();
    let names: Vec<String> = q.arrows.iter().map(|a| a.name.clone()).collect();
    let relations: Vec<Relation<F>> = q
        .relations
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| {
                    (
                        field.from_i64(t.coeff),
                        Path::Arrows(t.path.iter().map(|n| aidx[n.as_str()]).collect()),
                    )
                })
                .collect()
        })
        .collect();
    let spread = relations
        .iter()
        .map(|r| {
            let lens: Vec<usize> = r.iter().map(|(_, p)| PathSpace::len(p)).collect();
            lens.iter().max().unwrap_or(&0) - lens.iter().min().unwrap_or(&0)
        })
        .max()
        .unwrap_or(0);

    // Smallest m with every path of length m inside the relation ideal.
    let mut found = None;
    for m in 1..=bound + 1 {
        let space = PathSpace::build(q.vertices.len(), arrows.clone(), names.clone(), m + spread)?;
        let long: Vec<usize> = (0..space.paths.len())
            .filter(|&i| PathSpace::len(&space.paths[i]) == m)
            .collect();
        if long.is_empty() {
            found = Some(m);
            break;
        }
        let gens = ideal_products(field, &space, &relations, m + spread, None);
        let span = Subspace::from_vectors(field, space.paths.len(), gens);
        let all_in = long.iter().all(|&i| {
            let mut e = vec![field.zero(); space.paths.len()];
            e[i] = field.one();
            span.contains_vector(&e)
        });
        if all_in {
            found = Some(m);
            break;
        }
    }
    let Some(m) = found else {
        return Err(Error::NonAdmissible(format!(
            "no power of the arrow ideal up to {} lies in the relation ideal",
            bound + 1
        )));
    };

    // kQ/I = V_{<m} / (I mod R^m).
    let space = PathSpace::build(q.vertices.len(), arrows, names, m - 1)?;
    let np = space.paths.len();
    let rels = ideal_products(field, &space, &relations, m - 1, Some(m));
    // Reverse the column order so pivots land on the latest paths and the
    // quotient keeps the earliest ones as basis.
    let reversed: Vec<Vec<F::Elem>> =
        rels.into_iter().map(|v| v.into_iter().rev().collect()).collect();
    let kernel = Subspace::from_vectors(field, np, reversed);
    let free_rev = kernel.free_columns();
    let mut basis_paths: Vec<usize> = free_rev.iter().map(|&c| np - 1 - c).collect();
    basis_paths.sort_unstable();
    let n = basis_paths.len();
    let pos_in_basis: HashMap<usize, usize> =
        basis_paths.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let normal_form = |path: Option<Path>| -> Vec<F::Elem> {
        let mut out = vec![field.zero(); n];
        let Some(path) = path else { return out };
        if PathSpace::len(&path) >= m {
            return out;
        }
        let mut v = vec![field.zero(); np];
        v[np - 1 - space.index[&path]] = field.one();
        let red = kernel.reduce(&v);
        for (c, x) in red.iter().enumerate() {
            if !field.is_zero(x) {
                out[pos_in_basis[&(np - 1 - c)]] = x.clone();
            }
        }
        out
    };

    let mut constants = Vec::with_capacity(n * n * n);
    for &i in &basis_paths {
        for &j in &basis_paths {
            let prod = space.compose(&space.paths[i], &space.paths[j]);
            constants.extend(normal_form(prod));
        }
    }
    let mut unit = vec![field.zero(); n];
    let mut vertex_idempotents = Vec::new();
    let mut arrow_ideal = Vec::new();
    for (bi, &pi) in basis_paths.iter().enumerate() {
        match space.paths[pi] {
            Path::Trivial(_) => {
                unit[bi] = field.one();
                vertex_idempotents.push(bi);
            }
            Path::Arrows(_) => arrow_ideal.push(bi),
        }
    }
    let labels = basis_paths.iter().map(|&p| space.label(&space.paths[p], &q.vertices)).collect();
    let alg = Algebra::from_flat(field, n, constants, unit, Some(labels));
    let report = alg.validate();
    if !report.is_valid() {
        return Err(Error::InvalidAlgebra(format!("path algebra failed validation: {report:?}")));
    }
    Ok(alg.with_provenance(QuiverProvenance { vertex_idempotents, arrow_ideal }))
}

/// The nilpotency index `m` certified for a built path algebra: the
/// smallest `m` with `J^m = 0`.
pub fn radical_nilpotency_index<F: Field>(a: &Algebra<F>) -> Option<usize> {
    let prov = a.quiver_provenance()?;
    let f = a.field();
    let mut power = Subspace::from_vectors(
        f,
        a.dim(),
        prov.arrow_ideal.iter().map(|&i| a.basis_vector(i)).collect(),
    );
    let j = power.clone();
    let mut m = 1;
    while !power.is_zero() {
        let mut prods = Vec::new();
        for x in power.vectors() {
            for y in j.vectors() {
                prods.push(a.mul(&x, &y));
            }
        }
        power = Subspace::from_vectors(f, a.dim(), prods);
        m += 1;
        if m > a.dim() + 1 {
            return None;
        }
    }
    Some(m)
}

impl<F: Field> Algebra<F> {
    /// Convenience: parse the text format and build over `field`.
    pub fn from_quiver_text(text: &str, field: &F) -> Result<Self> {
        build_path_algebra(&parse_quiver_spec(text)?, field)
    }
}
