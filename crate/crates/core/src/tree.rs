//! Planar rooted tree monomials over a finite operation alphabet.
//!
//! A [`TreeMonomial`] is either a leaf placeholder or a labelled internal
//! vertex with one child per input of its generator. A bare leaf at the top
//! level is the trivial monomial (the operadic identity). Leaves are
//! positional: leaf `i` is the `i`-th leaf in left-to-right depth-first order.
//!
//! Path sequences are the canonical serialization used by the monomial
//! orders in [`crate::order`]; the recursive form is what composition and
//! divisibility work on.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

/// Index of a generator inside its [`Alphabet`].
pub type GenId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("leaf index {index} out of range 1..={arity}")]
    LeafIndex { index: usize, arity: usize },
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("malformed path sequence: {0}")]
    MalformedPath(String),
    #[error("the trivial monomial cannot be used as a divisor")]
    DegenerateDivisor,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    id: String,
    arity: usize,
}

impl Generator {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id != "1"
        && id.chars().all(|c| !c.is_whitespace() && !c.is_control() && !matches!(c, '(' | ')' | ',' | '*' | ':'))
}

/// A finite, ordered set of generating operations, all of positive arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, usize)>) -> Result<Self, TreeError> {
        let mut out: Vec<Generator> = Vec::new();
        for (id, arity) in generators {
            let id = id.into();
            if !valid_id(&id) {
                return Err(TreeError::InvalidGenerator(format!("bad identifier {id:?}")));
            }
            if arity == 0 {
                return Err(TreeError::InvalidGenerator(format!(
                    "generator {id} has arity 0; only positive arities are allowed"
                )));
            }
            if out.iter().any(|g| g.id == id) {
                return Err(TreeError::InvalidGenerator(format!("duplicate generator {id}")));
            }
            out.push(Generator { id, arity });
        }
        Ok(Self { generators: out })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn arity(&self, g: GenId) -> usize {
        self.generators[g].arity
    }

    pub fn id(&self, g: GenId) -> &str {
        &self.generators[g].id
    }

    pub fn lookup(&self, id: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.id == id)
    }

    /// True iff some generator has arity one. Arity then no longer bounds
    /// weight, so arity-indexed counts need an explicit weight cap.
    pub fn has_unary(&self) -> bool {
        self.generators.iter().any(|g| g.arity == 1)
    }

    pub fn max_arity(&self) -> usize {
        self.generators.iter().map(|g| g.arity).max().unwrap_or(0)
    }

    /// Checks labels and the arity condition at every vertex.
    pub fn validate(&self, t: &TreeMonomial) -> Result<(), TreeError> {
        match t {
            TreeMonomial::Leaf => Ok(()),
            TreeMonomial::Node(g, children) => {
                if *g >= self.len() {
                    return Err(TreeError::Alphabet(format!(
                        "generator index {g} not in an alphabet of size {}",
                        self.len()
                    )));
                }
                if children.len() != self.arity(*g) {
                    return Err(TreeError::Alphabet(format!(
                        "vertex labelled {} has {} children but arity {}",
                        self.id(*g),
                        children.len(),
                        self.arity(*g)
                    )));
                }
                children.iter().try_for_each(|c| self.validate(c))
            }
        }
    }

    /// Parses the textual literal grammar:
    /// `monomial := "1" | node ; node := id "(" child ("," child)* ")" ; child := "*" | node`.
    pub fn parse_monomial(&self, text: &str) -> Result<TreeMonomial, TreeError> {
        let mut p = Parser { src: text, pos: 0, alphabet: self };
        p.skip_ws();
        if p.peek() == Some('1') {
            p.pos += 1;
            p.skip_ws();
            if p.pos == text.len() {
                return Ok(TreeMonomial::Leaf);
            }
            return Err(p.error("trailing input after trivial monomial"));
        }
        let t = p.node()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    pub fn format_monomial(&self, t: &TreeMonomial) -> String {
        fn go(a: &Alphabet, t: &TreeMonomial, out: &mut String) {
            match t {
                TreeMonomial::Leaf => out.push('*'),
                TreeMonomial::Node(g, ch) => {
                    out.push_str(a.id(*g));
                    out.push('(');
                    for (k, c) in ch.iter().enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        go(a, c, out);
                    }
                    out.push(')');
                }
            }
        }
        if t.is_trivial() {
            return "1".to_string();
        }
        let mut out = String::new();
        go(self, t, &mut out);
        out
    }

    /// Words are written by juxtaposition when every id is a single
    /// character, otherwise letters are separated by dots.
    pub fn format_path(&self, p: &PathSequence) -> String {
        let compact = self.generators.iter().all(|g| g.id.chars().count() == 1);
        let words: Vec<String> = p
            .words()
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "ε".to_string();
                }
                let ids: Vec<&str> = w.iter().map(|&g| self.id(g)).collect();
                if compact {
                    ids.concat()
                } else {
                    ids.join(".")
                }
            })
            .collect();
        format!("({})", words.join(","))
    }

    /// Parses a path sequence written as by [`Alphabet::format_path`].
    pub fn parse_path(&self, text: &str) -> Result<PathSequence, TreeError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| TreeError::Parse { pos: 0, msg: "expected parentheses".into() })?;
        let compact = self.generators.iter().all(|g| g.id.chars().count() == 1);
        let mut words = Vec::new();
        for raw in inner.split(',') {
            let raw = raw.trim();
            if raw == "ε" || raw.is_empty() {
                words.push(Vec::new());
                continue;
            }
            let pieces: Vec<String> = if compact {
                raw.chars().map(String::from).collect()
            } else {
                raw.split('.').map(str::to_string).collect()
            };
            let mut w = Vec::with_capacity(pieces.len());
            for piece in pieces {
                w.push(
                    self.lookup(&piece)
                        .ok_or_else(|| TreeError::Alphabet(format!("unknown generator {piece:?} in path")))?,
                );
            }
            words.push(w);
        }
        Ok(PathSequence(words))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error(&self, msg: &str) -> TreeError {
        TreeError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn expect(&mut self, want: char) -> Result<(), TreeError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{want}'")))
        }
    }

    fn child(&mut self) -> Result<TreeMonomial, TreeError> {
        self.skip_ws();
        if self.peek() == Some('*') {
            self.pos += 1;
            return Ok(TreeMonomial::Leaf);
        }
        self.node()
    }

    fn node(&mut self) -> Result<TreeMonomial, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | ',' | '*') {
                break;
            }
            self.pos += c.len_utf8();
        }
        let id = &self.src[start..self.pos];
        if id.is_empty() {
            return Err(self.error("expected generator id"));
        }
        let g = self
            .alphabet
            .lookup(id)
            .ok_or_else(|| TreeError::Parse { pos: start, msg: format!("unknown generator {id:?}") })?;
        self.expect('(')?;
        let mut children = vec![self.child()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.child()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        let arity = self.alphabet.arity(g);
        if children.len() != arity {
            return Err(TreeError::Parse {
                pos: start,
                msg: format!("{id} has arity {arity} but {} children were given", children.len()),
            });
        }
        Ok(TreeMonomial::Node(g, children))
    }
}

/// Root-to-leaf label words, one per leaf in planar order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathSequence(pub Vec<Vec<GenId>>);

impl PathSequence {
    pub fn words(&self) -> &[Vec<GenId>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A tree monomial. `Leaf` at the top level is the trivial monomial.
///
/// Equality is structural, which coincides with equality of path sequences.
/// The derived `Ord` is a structural order used only for deterministic set
/// iteration; monomial orders live in [`crate::order`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeMonomial {
    Leaf,
    Node(GenId, Vec<TreeMonomial>),
}

impl TreeMonomial {
    pub fn trivial() -> Self {
        TreeMonomial::Leaf
    }

    /// A single vertex labelled `g` with `arity` leaves.
    pub fn corolla(g: GenId, arity: usize) -> Self {
        TreeMonomial::Node(g, vec![TreeMonomial::Leaf; arity])
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, TreeMonomial::Leaf)
    }

    pub fn arity(&self) -> usize {
        match self {
            TreeMonomial::Leaf => 1,
            TreeMonomial::Node(_, ch) => ch.iter().map(TreeMonomial::arity).sum(),
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            TreeMonomial::Leaf => 0,
            TreeMonomial::Node(_, ch) => 1 + ch.iter().map(TreeMonomial::weight).sum::<usize>(),
        }
    }

    /// Number of internal vertices on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        match self {
            TreeMonomial::Leaf => 0,
            TreeMonomial::Node(_, ch) => 1 + ch.iter().map(TreeMonomial::height).max().unwrap_or(0),
        }
    }

    pub fn is_single_branched(&self) -> bool {
        self.weight() == self.height()
    }

    pub fn label(&self) -> Option<GenId> {
        match self {
            TreeMonomial::Leaf => None,
            TreeMonomial::Node(g, _) => Some(*g),
        }
    }

    pub fn children(&self) -> &[TreeMonomial] {
        match self {
            TreeMonomial::Leaf => &[],
            TreeMonomial::Node(_, ch) => ch,
        }
    }

    /// Partial composition `self ∘_index other`: graft `other` onto leaf
    /// `index` (1-based).
    pub fn compose(&self, index: usize, other: &TreeMonomial) -> Result<TreeMonomial, TreeError> {
        let arity = self.arity();
        if index == 0 || index > arity {
            return Err(TreeError::LeafIndex { index, arity });
        }
        let mut remaining = index;
        Ok(graft(self, &mut remaining, other))
    }

    pub fn path_sequence(&self) -> PathSequence {
        fn go(t: &TreeMonomial, prefix: &mut Vec<GenId>, out: &mut Vec<Vec<GenId>>) {
            match t {
                TreeMonomial::Leaf => out.push(prefix.clone()),
                TreeMonomial::Node(g, ch) => {
                    prefix.push(*g);
                    for c in ch {
                        go(c, prefix, out);
                    }
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        PathSequence(out)
    }

    /// Rebuilds the unique monomial with the given path sequence.
    pub fn from_path_sequence(p: &PathSequence, alphabet: &Alphabet) -> Result<Self, TreeError> {
        let words = p.words();
        if words.is_empty() {
            return Err(TreeError::MalformedPath("empty path sequence".into()));
        }
        for w in words {
            if let Some(&g) = w.iter().find(|&&g| g >= alphabet.len()) {
                return Err(TreeError::Alphabet(format!("letter index {g} outside the alphabet")));
            }
        }
        let mut cursor = 0;
        let t = rebuild(words, &mut cursor, 0, alphabet)?;
        if cursor != words.len() {
            return Err(TreeError::MalformedPath(format!(
                "{} leaves accounted for but {} words given",
                cursor,
                words.len()
            )));
        }
        Ok(t)
    }

    /// True iff `divisor` occurs in `self` as a labelled subtree.
    pub fn is_divisible_by(&self, divisor: &TreeMonomial) -> Result<bool, TreeError> {
        divides(divisor, self)
    }

    /// All distinct submonomials, optionally only those of one weight.
    pub fn submonomials(&self, weight: Option<usize>) -> BTreeSet<TreeMonomial> {
        let mut out = BTreeSet::new();
        let cap = weight.unwrap_or(usize::MAX);
        let mut memo = HashMap::new();
        self.visit_nodes(&mut |v| {
            for (shape, w) in rooted_shapes(v, cap, &mut memo) {
                if weight.is_none_or(|want| want == w) {
                    out.insert(shape);
                }
            }
        });
        out
    }

    /// Calls `f` on every internal vertex (as the subtree rooted there),
    /// in depth-first planar order.
    pub fn visit_nodes<'a>(&'a self, f: &mut impl FnMut(&'a TreeMonomial)) {
        if let TreeMonomial::Node(_, ch) = self {
            f(self);
            for c in ch {
                c.visit_nodes(f);
            }
        }
    }
}

fn graft(t: &TreeMonomial, remaining: &mut usize, other: &TreeMonomial) -> TreeMonomial {
    match t {
        TreeMonomial::Leaf => {
            *remaining -= 1;
            if *remaining == 0 {
                other.clone()
            } else {
                TreeMonomial::Leaf
            }
        }
        TreeMonomial::Node(g, ch) => {
            let mut out = Vec::with_capacity(ch.len());
            for c in ch {
                if *remaining == 0 {
                    out.push(c.clone());
                } else {
                    out.push(graft(c, remaining, other));
                }
            }
            TreeMonomial::Node(*g, out)
        }
    }
}

fn rebuild(
    words: &[Vec<GenId>],
    cursor: &mut usize,
    depth: usize,
    alphabet: &Alphabet,
) -> Result<TreeMonomial, TreeError> {
    let Some(first) = words.get(*cursor) else {
        return Err(TreeError::MalformedPath("ran out of words while filling children".into()));
    };
    if first.len() == depth {
        *cursor += 1;
        return Ok(TreeMonomial::Leaf);
    }
    if first.len() < depth {
        return Err(TreeError::MalformedPath(format!("word {} is too short", *cursor + 1)));
    }
    let g = first[depth];
    let start = *cursor;
    let mut children = Vec::with_capacity(alphabet.arity(g));
    for _ in 0..alphabet.arity(g) {
        if let Some(w) = words.get(*cursor) {
            if w.len() <= depth || w[depth] != g || w[..depth] != first[..depth] {
                return Err(TreeError::MalformedPath(format!(
                    "word {} does not continue the vertex started by word {}",
                    *cursor + 1,
                    start + 1
                )));
            }
        }
        children.push(rebuild(words, cursor, depth + 1, alphabet)?);
    }
    Ok(TreeMonomial::Node(g, children))
}

/// Does `pattern`, anchored at the root of `t`, match `t`? Leaf positions of
/// the pattern accept anything; internal positions need equal labels.
pub(crate) fn matches_at(pattern: &TreeMonomial, t: &TreeMonomial) -> bool {
    match (pattern, t) {
        (TreeMonomial::Leaf, _) => true,
        (TreeMonomial::Node(_, _), TreeMonomial::Leaf) => false,
        (TreeMonomial::Node(g, pc), TreeMonomial::Node(h, tc)) => {
            g == h && pc.iter().zip(tc).all(|(p, c)| matches_at(p, c))
        }
    }
}

/// True iff `d` divides `t`. The trivial monomial is rejected as a divisor.
pub fn divides(d: &TreeMonomial, t: &TreeMonomial) -> Result<bool, TreeError> {
    if d.is_trivial() {
        return Err(TreeError::DegenerateDivisor);
    }
    let mut found = false;
    t.visit_nodes(&mut |v| {
        if !found && matches_at(d, v) {
            found = true;
        }
    });
    Ok(found)
}

/// Every labelled subtree whose lowest vertex is the root of `t`, paired
/// with its weight, capped at `cap`.
fn rooted_shapes(
    t: &TreeMonomial,
    cap: usize,
    memo: &mut HashMap<(*const TreeMonomial, usize), Vec<(TreeMonomial, usize)>>,
) -> Vec<(TreeMonomial, usize)> {
    let TreeMonomial::Node(g, ch) = t else {
        return Vec::new();
    };
    if cap == 0 {
        return Vec::new();
    }
    let key = (t as *const TreeMonomial, cap);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // partial: (children so far, weight so far)
    let mut partial: Vec<(Vec<TreeMonomial>, usize)> = vec![(Vec::with_capacity(ch.len()), 1)];
    for c in ch {
        let options = rooted_shapes(c, cap - 1, memo);
        let mut next = Vec::new();
        for (kids, w) in &partial {
            let mut cut = kids.clone();
            cut.push(TreeMonomial::Leaf);
            next.push((cut, *w));
            for (shape, sw) in &options {
                if w + sw <= cap {
                    let mut k = kids.clone();
                    k.push(shape.clone());
                    next.push((k, w + sw));
                }
            }
        }
        partial = next;
    }
    let out: Vec<(TreeMonomial, usize)> =
        partial.into_iter().map(|(kids, w)| (TreeMonomial::Node(*g, kids), w)).collect();
    memo.insert(key, out.clone());
    out
}
