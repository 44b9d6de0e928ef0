//! Multilinear parts of the free Lie ring and of the free Lie superring on
//! odd generators.
//!
//! Elements are kept in the left-regulated basis
//! `λ_w = [w_1, [w_2, [..., [w_{k-1}, w_k]...]]]` where `w_k` is the largest
//! label present (the anchor). Brackets are rewritten into that basis with
//! the (super) antisymmetry and Jacobi relations. An independent check is the
//! expansion into the free associative (super)ring, see [`AssocExpansion`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{sorting_sign, LabelPermutation};
use crate::tree::{labels_of, mask_of, LabelSet};

/// Which bracket relations are in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Ordinary Lie ring: `[a,b] = -[b,a]`.
    Ordinary,
    /// Lie superring with every generator odd; a monomial of `k` generators has degree `k`.
    Super,
}

impl Flavor {
    /// `(-1)^{|a||b|}` for the super flavor, `+1` for the ordinary one.
    #[inline]
    pub fn koszul(self, deg_a: usize, deg_b: usize) -> i32 {
        match self {
            Flavor::Super if deg_a % 2 == 1 && deg_b % 2 == 1 => -1,
            _ => 1,
        }
    }

    /// The sign `s` in `[a, b] = s [b, a]`.
    #[inline]
    pub fn swap_sign(self, deg_a: usize, deg_b: usize) -> i32 {
        -self.koszul(deg_a, deg_b)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Ordinary => "ordinary",
            Flavor::Super => "super",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" | "lie" => Ok(Flavor::Ordinary),
            "super" | "superlie" => Ok(Flavor::Super),
            _ => Err(Error::Parse(format!("unknown flavor '{s}'"))),
        }
    }
}

/// A bracket monomial: a full binary bracketing of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketExpr {
    Gen(u8),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn gen(x: u8) -> Self {
        BracketExpr::Gen(x)
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// `[w_1, [w_2, [..., w_k]]]`.
    pub fn right_normed(word: &[u8]) -> Result<Self> {
        let (&last, init) =
            word.split_last().ok_or_else(|| Error::InvalidBracket("empty word".into()))?;
        Ok(init.iter().rev().fold(BracketExpr::Gen(last), |acc, &x| BracketExpr::bracket(BracketExpr::Gen(x), acc)))
    }

    /// Generators from left to right.
    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u8>) {
        match self {
            BracketExpr::Gen(x) => out.push(*x),
            BracketExpr::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Number of generators, which is also the super degree.
    pub fn degree(&self) -> usize {
        match self {
            BracketExpr::Gen(_) => 1,
            BracketExpr::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    /// Label set, checking that every generator occurs once and none is 0.
    pub fn labels(&self) -> Result<LabelSet> {
        let leaves = self.leaves();
        let mut mask: LabelSet = 0;
        for &x in &leaves {
            if x == 0 || x > 31 {
                return Err(Error::InvalidBracket(format!("generator label {x} out of range 1..31")));
            }
            if mask & (1 << x) != 0 {
                return Err(Error::InvalidBracket(format!("generator {x} occurs twice")));
            }
            mask |= 1 << x;
        }
        Ok(mask)
    }

    pub fn substitute(&self, sigma: &LabelPermutation) -> BracketExpr {
        match self {
            BracketExpr::Gen(x) => BracketExpr::Gen(sigma.apply(*x)),
            BracketExpr::Bracket(a, b) => BracketExpr::bracket(a.substitute(sigma), b.substitute(sigma)),
        }
    }

    /// Shape signature with generators erased, e.g. `[*,[*,*]]`.
    pub fn shape(&self) -> String {
        match self {
            BracketExpr::Gen(_) => "*".into(),
            BracketExpr::Bracket(a, b) => format!("[{},{}]", a.shape(), b.shape()),
        }
    }

    /// Text with label names; `names[i - 1]` is the name of label `i`.
    pub fn to_text_named(&self, names: Option<&[String]>) -> String {
        match self {
            BracketExpr::Gen(x) => label_name(*x, names),
            BracketExpr::Bracket(a, b) => format!("[{},{}]", a.to_text_named(names), b.to_text_named(names)),
        }
    }

    /// Uniformly random bracketing of a random ordering of `labels`.
    pub fn random<R: Rng + ?Sized>(labels: LabelSet, rng: &mut R) -> Result<Self> {
        let mut ls = labels_of(labels);
        if ls.is_empty() {
            return Err(Error::InvalidBracket("no generators".into()));
        }
        ls.shuffle(rng);
        Ok(random_shape(&ls, rng))
    }

    /// All bracketings of all orderings of `labels`.
    pub fn all_monomials(labels: LabelSet) -> Vec<Self> {
        let ls = labels_of(labels);
        let mut out = Vec::new();
        for perm in LabelPermutation::all(ls.len()) {
            let word: Vec<u8> = perm.images().iter().map(|&i| ls[i as usize]).collect();
            out.extend(all_shapes(&word));
        }
        out
    }
}

fn random_shape<R: Rng + ?Sized>(word: &[u8], rng: &mut R) -> BracketExpr {
    if word.len() == 1 {
        return BracketExpr::Gen(word[0]);
    }
    let cut = rng.gen_range(1..word.len());
    BracketExpr::bracket(random_shape(&word[..cut], rng), random_shape(&word[cut..], rng))
}

fn all_shapes(word: &[u8]) -> Vec<BracketExpr> {
    if word.len() == 1 {
        return vec![BracketExpr::Gen(word[0])];
    }
    let mut out = Vec::new();
    for cut in 1..word.len() {
        for a in all_shapes(&word[..cut]) {
            for b in all_shapes(&word[cut..]) {
                out.push(BracketExpr::bracket(a.clone(), b));
            }
        }
    }
    out
}

fn label_name(x: u8, names: Option<&[String]>) -> String {
    match names.and_then(|ns| ns.get(x as usize - 1)) {
        Some(name) => name.clone(),
        None => x.to_string(),
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_named(None))
    }
}

type Terms = BTreeMap<Vec<u8>, BigInt>;

fn add_term(terms: &mut Terms, word: Vec<u8>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(word) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn prepend(x: u8, terms: &Terms) -> Terms {
    terms
        .iter()
        .map(|(w, c)| {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(x);
            nw.extend_from_slice(w);
            (nw, c.clone())
        })
        .collect()
}

/// `[λ_u, b]` where every word of `b` ends in the overall largest label.
fn bracket_word_into(flavor: Flavor, u: &[u8], b: &Terms) -> Terms {
    if u.len() == 1 {
        return prepend(u[0], b);
    }
    // [[x, λ_u'], B] = [x, [λ_u', B]] - (-1)^{|x||u'|} [λ_u', [x, B]]
    let (x, rest) = (u[0], &u[1..]);
    let mut out = prepend(x, &bracket_word_into(flavor, rest, b));
    let second = bracket_word_into(flavor, rest, &prepend(x, b));
    let s = flavor.koszul(1, rest.len());
    for (w, c) in second {
        add_term(&mut out, w, if s == 1 { -c } else { c });
    }
    out
}

/// An integer combination of left-regulated basis monomials on a label set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperLieElement {
    flavor: Flavor,
    labels: LabelSet,
    /// Keyed by the full word `w` of `λ_w`; the last letter is the largest label.
    terms: Terms,
}

impl SuperLieElement {
    pub fn zero(labels: LabelSet, flavor: Flavor) -> Self {
        Self { flavor, labels, terms: Terms::new() }
    }

    /// The generator `x_i` as a one-letter element.
    pub fn generator(x: u8, flavor: Flavor) -> Result<Self> {
        Self::basis(&[x], flavor)
    }

    /// `λ_w`. The word must end in its largest letter.
    pub fn basis(word: &[u8], flavor: Flavor) -> Result<Self> {
        let labels = BracketExpr::right_normed(word)?.labels()?;
        if word.last().copied() != labels_of(labels).last().copied() {
            return Err(Error::InvalidBracket(format!("basis word {word:?} must end with its largest label")));
        }
        let mut terms = Terms::new();
        terms.insert(word.to_vec(), BigInt::one());
        Ok(Self { flavor, labels, terms })
    }

    /// Basis element `λ_σ = [x_σ(1), [..., [x_σ(n-1), x_n]]]` for `σ` fixing 0 on `{0..n-1}`.
    pub fn lambda(sigma: &LabelPermutation, flavor: Flavor) -> Result<Self> {
        if !sigma.fixes_zero() {
            return Err(Error::MovesRoot);
        }
        let n = sigma.len();
        let mut word: Vec<u8> = (1..n as u8).map(|i| sigma.apply(i)).collect();
        word.push(n as u8);
        Self::basis(&word, flavor)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn labels(&self) -> LabelSet {
        self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &[u8]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    /// If this is `±λ_w`, return `(sign, w)`.
    pub fn as_signed_basis(&self) -> Option<(i32, Vec<u8>)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, w.clone()))
        } else if (-c).is_one() {
            Some((-1, w.clone()))
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch(format!("{} vs {}", self.flavor, other.flavor)));
        }
        if self.labels != other.labels && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidBracket("adding elements on different generator sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.labels = other.labels;
        }
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) -> Result<()> {
        self.check_compatible(other)?;
        if self.is_zero() {
            self.labels = other.labels;
        }
        for (w, c) in &other.terms {
            add_term(&mut self.terms, w.clone(), c * k);
        }
        Ok(())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.labels, self.flavor);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// The (super)bracket `[self, other]`, rewritten into the basis.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch(format!("{} vs {}", self.flavor, other.flavor)));
        }
        if self.labels & other.labels != 0 {
            return Err(Error::InvalidBracket("bracket of elements sharing a generator".into()));
        }
        let labels = self.labels | other.labels;
        let anchor = 1u32 << (31 - labels.leading_zeros());
        let (left, right, sign) = if other.labels & anchor != 0 {
            (self, other, 1)
        } else {
            (other, self, self.flavor.swap_sign(self.n(), other.n()))
        };
        let mut terms = Terms::new();
        for (u, cu) in &left.terms {
            let expanded = bracket_word_into(self.flavor, u, &right.terms);
            let k = if sign == 1 { cu.clone() } else { -cu };
            for (w, c) in expanded {
                add_term(&mut terms, w, c * &k);
            }
        }
        Ok(Self { flavor: self.flavor, labels, terms })
    }

    /// Substitute `x_i -> x_σ(i)` and re-normalize; `twist` multiplies by the sign of `σ`.
    pub fn permute_generators(&self, sigma: &LabelPermutation, twist: bool) -> Result<Self> {
        let top = 32 - self.labels.leading_zeros();
        if (top as usize) > sigma.len() {
            return Err(Error::SizeMismatch { expected: top as usize, got: sigma.len() });
        }
        let new_labels = sigma.apply_mask(self.labels);
        if new_labels & 1 != 0 {
            return Err(Error::MovesRoot);
        }
        let mut out = Self::zero(new_labels, self.flavor);
        for (w, c) in &self.terms {
            let image: Vec<u8> = w.iter().map(|&x| sigma.apply(x)).collect();
            let e = normalize(&BracketExpr::right_normed(&image)?, self.flavor)?;
            out.add_scaled(&e, c)?;
        }
        if twist && sigma.sign() == -1 {
            out = out.neg();
        }
        Ok(out)
    }

    /// Expansion into the free associative (super)ring.
    pub fn assoc_expand(&self) -> Result<AssocExpansion> {
        let mut out = AssocExpansion::default();
        for (w, c) in &self.terms {
            let e = assoc_expand(&BracketExpr::right_normed(w)?, self.flavor)?;
            out.add_scaled(&e, c);
        }
        Ok(out)
    }

    /// Coefficient vector over the basis words of `labels`, in the order of
    /// [`basis_words`].
    pub fn to_vector(&self) -> Vec<BigInt> {
        basis_words(self.labels).iter().map(|w| self.coeff(w)).collect()
    }

    pub fn to_text_named(&self, names: Option<&[String]>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = BracketExpr::right_normed(w).map(|e| e.to_text_named(names)).unwrap_or_default();
            let mag = c.abs();
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for SuperLieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_named(None))
    }
}

/// Basis words of the multilinear part on `labels`: every ordering of all
/// labels but the largest, followed by the largest. Lexicographic order.
pub fn basis_words(labels: LabelSet) -> Vec<Vec<u8>> {
    let ls = labels_of(labels);
    let Some((&anchor, rest)) = ls.split_last() else {
        return Vec::new();
    };
    LabelPermutation::all(rest.len())
        .into_iter()
        .map(|p| {
            let mut w: Vec<u8> = p.images().iter().map(|&i| rest[i as usize]).collect();
            w.push(anchor);
            w
        })
        .collect()
}

/// Rewrite a bracket monomial into the left-regulated basis.
pub fn normalize(expr: &BracketExpr, flavor: Flavor) -> Result<SuperLieElement> {
    expr.labels()?;
    normalize_unchecked(expr, flavor)
}

fn normalize_unchecked(expr: &BracketExpr, flavor: Flavor) -> Result<SuperLieElement> {
    match expr {
        BracketExpr::Gen(x) => SuperLieElement::generator(*x, flavor),
        BracketExpr::Bracket(a, b) => normalize_unchecked(a, flavor)?.bracket(&normalize_unchecked(b, flavor)?),
    }
}

/// Normalize an integer combination of monomials on a common label set.
pub fn normalize_sum(terms: &[(BigInt, BracketExpr)], flavor: Flavor) -> Result<SuperLieElement> {
    let mut labels = None;
    let mut out: Option<SuperLieElement> = None;
    for (c, e) in terms {
        let l = e.labels()?;
        if *labels.get_or_insert(l) != l {
            return Err(Error::InvalidBracket("terms use different generator sets".into()));
        }
        let v = normalize_unchecked(e, flavor)?;
        match &mut out {
            Some(acc) => acc.add_scaled(&v, c)?,
            None => out = Some(v.scale(c)),
        }
    }
    out.ok_or_else(|| Error::InvalidBracket("empty sum".into()))
}

/// The isomorphism from the ordinary multilinear Lie ring to the super one:
/// a monomial whose generators read `x_γ(1), ..., x_γ(n)` from left to right
/// goes to `ε(γ)` times the same bracketing read as superbrackets.
pub fn theta_expr(expr: &BracketExpr) -> Result<SuperLieElement> {
    let leaves = expr.leaves();
    expr.labels()?;
    let s = sorting_sign(&leaves);
    let g = normalize_unchecked(expr, Flavor::Super)?;
    Ok(if s == 1 { g } else { g.neg() })
}

/// [`theta_expr`] applied to an ordinary element given in the basis.
pub fn theta(element: &SuperLieElement) -> Result<SuperLieElement> {
    if element.flavor != Flavor::Ordinary {
        return Err(Error::FlavorMismatch("theta takes an ordinary Lie element".into()));
    }
    let mut out = SuperLieElement::zero(element.labels, Flavor::Super);
    for (w, c) in &element.terms {
        let k = if sorting_sign(w) == 1 { c.clone() } else { -c };
        add_term(&mut out.terms, w.clone(), k);
    }
    Ok(out)
}

/// An integer combination of associative words, each word a permutation of the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssocExpansion {
    words: Terms,
}

impl AssocExpansion {
    pub fn words(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.words.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn coeff(&self, word: &[u8]) -> BigInt {
        self.words.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        for (w, c) in &other.words {
            add_term(&mut self.words, w.clone(), c * k);
        }
    }

    fn product(&self, other: &Self) -> Self {
        let mut words = Terms::new();
        for (a, ca) in &self.words {
            for (b, cb) in &other.words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_term(&mut words, w, ca * cb);
            }
        }
        Self { words }
    }
}

/// Expand `[a,b] = ab - (-1)^{|a||b|} ba` recursively.
pub fn assoc_expand(expr: &BracketExpr, flavor: Flavor) -> Result<AssocExpansion> {
    expr.labels()?;
    Ok(assoc_rec(expr, flavor))
}

fn assoc_rec(expr: &BracketExpr, flavor: Flavor) -> AssocExpansion {
    match expr {
        BracketExpr::Gen(x) => {
            let mut words = Terms::new();
            words.insert(vec![*x], BigInt::one());
            AssocExpansion { words }
        }
        BracketExpr::Bracket(a, b) => {
            let ea = assoc_rec(a, flavor);
            let eb = assoc_rec(b, flavor);
            let mut out = ea.product(&eb);
            let s = flavor.koszul(a.degree(), b.degree());
            out.add_scaled(&eb.product(&ea), &BigInt::from(-s));
            out
        }
    }
}

/// A parsed signed sum of bracket monomials with its label naming.
#[derive(Clone, Debug)]
pub struct ParsedSum {
    pub terms: Vec<(BigInt, BracketExpr)>,
    /// `names[i - 1]` names label `i`; `None` when labels were numeric.
    pub names: Option<Vec<String>>,
}

/// Parse text such as `-[a,[b,[c,[d,e]]]] + 2*[[a,b],[c,[d,e]]]`.
///
/// Labels are either all decimal numbers (used as given) or identifiers,
/// which are sorted (natural order) and mapped to `1..n`.
pub fn parse_bracket_sum(text: &str) -> Result<ParsedSum> {
    let tokens = tokenize(text)?;
    let idents: Vec<&str> = tokens
        .iter()
        .filter_map(|t| if let Token::Name(s) = t { Some(s.as_str()) } else { None })
        .collect();
    let numeric = idents.iter().all(|s| s.bytes().all(|b| b.is_ascii_digit()));
    let names: Option<Vec<String>> = if numeric {
        None
    } else {
        let mut uniq: Vec<String> = idents.iter().map(|s| s.to_string()).collect();
        uniq.sort_by(|a, b| natural_cmp(a, b));
        uniq.dedup();
        Some(uniq)
    };
    let lookup = |s: &str| -> Result<u8> {
        match &names {
            None => s.parse::<u8>().map_err(|_| Error::Parse(format!("bad label '{s}'"))),
            Some(ns) => Ok(ns.iter().position(|n| n == s).map(|i| i as u8 + 1).unwrap_or(0)),
        }
    };
    let mut p = SumParser { tokens: &tokens, pos: 0, lookup: &lookup };
    let terms = p.sum()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    for (_, e) in &terms {
        e.labels()?;
    }
    Ok(ParsedSum { terms, names })
}

fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    let split = |s: &str| {
        let idx = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (p, d) = s.split_at(idx);
        (p.to_string(), d.parse::<u64>().ok(), s.to_string())
    };
    split(a).cmp(&split(b))
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Comma,
    Plus,
    Minus,
    Star,
    Name(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '[' => out.push(Token::Open),
            ']' => out.push(Token::Close),
            ',' => out.push(Token::Comma),
            '+' => out.push(Token::Plus),
            '-' | '\u{2212}' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Token::Name(s));
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct SumParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    lookup: &'a dyn Fn(&str) -> Result<u8>,
}

impl SumParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<Vec<(BigInt, BracketExpr)>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                Some(Token::Plus) => self.pos += 1,
                Some(Token::Minus) => {
                    sign = -sign;
                    self.pos += 1;
                }
                None if !first => break,
                _ if first => {}
                _ => return Err(Error::Parse("expected '+' or '-' between terms".into())),
            }
            first = false;
            // Optional coefficient `k*` or `k[`.
            let mut coeff = BigInt::one();
            if let Some(Token::Name(s)) = self.peek() {
                if s.bytes().all(|b| b.is_ascii_digit()) && matches!(self.tokens.get(self.pos + 1), Some(Token::Star) | Some(Token::Open)) {
                    coeff = s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?;
                    self.pos += 1;
                    if self.peek() == Some(&Token::Star) {
                        self.pos += 1;
                    }
                }
            }
            let e = self.expr()?;
            terms.push((sign * coeff, e));
            if self.peek().is_none() {
                break;
            }
        }
        Ok(terms)
    }

    fn expr(&mut self) -> Result<BracketExpr> {
        match self.peek().cloned() {
            Some(Token::Open) => {
                self.pos += 1;
                let a = self.expr()?;
                if self.peek() != Some(&Token::Comma) {
                    return Err(Error::Parse("expected ','".into()));
                }
                self.pos += 1;
                let b = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::Parse("expected ']'".into()));
                }
                self.pos += 1;
                Ok(BracketExpr::bracket(a, b))
            }
            Some(Token::Name(s)) => {
                self.pos += 1;
                Ok(BracketExpr::Gen((self.lookup)(&s)?))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Label mask of `{1..n}` as generators.
pub fn generators(n: usize) -> LabelSet {
    mask_of(1..=n as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: u8) -> BracketExpr {
        BracketExpr::gen(x)
    }

    fn br(a: BracketExpr, b: BracketExpr) -> BracketExpr {
        BracketExpr::bracket(a, b)
    }

    fn lam(word: &[u8], f: Flavor) -> SuperLieElement {
        SuperLieElement::basis(word, f).unwrap()
    }

    #[test]
    fn two_generators() {
        let e = normalize(&br(g(2), g(1)), Flavor::Super).unwrap();
        assert_eq!(e, lam(&[1, 2], Flavor::Super));
        let e = normalize(&br(g(2), g(1)), Flavor::Ordinary).unwrap();
        assert_eq!(e, lam(&[1, 2], Flavor::Ordinary).neg());
    }

    #[test]
    fn super_jacobi_three() {
        let e = normalize(&br(br(g(1), g(2)), g(3)), Flavor::Super).unwrap();
        let expected = lam(&[1, 2, 3], Flavor::Super).add(&lam(&[2, 1, 3], Flavor::Super)).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn assoc_examples() {
        let o = assoc_expand(&br(g(1), g(2)), Flavor::Ordinary).unwrap();
        assert_eq!(o.coeff(&[1, 2]), BigInt::from(1));
        assert_eq!(o.coeff(&[2, 1]), BigInt::from(-1));
        let s = assoc_expand(&br(g(1), g(2)), Flavor::Super).unwrap();
        assert_eq!(s.coeff(&[1, 2]), BigInt::from(1));
        assert_eq!(s.coeff(&[2, 1]), BigInt::from(1));
    }

    #[test]
    fn rejects_non_multilinear() {
        assert!(normalize(&br(g(1), g(1)), Flavor::Super).is_err());
        assert!(normalize(&br(g(0), g(1)), Flavor::Super).is_err());
    }

    #[test]
    fn theta_small() {
        assert_eq!(theta_expr(&br(g(1), g(2))).unwrap(), lam(&[1, 2], Flavor::Super));
        assert_eq!(theta_expr(&br(g(2), g(1))).unwrap(), lam(&[1, 2], Flavor::Super).neg());
        let via_basis = theta(&normalize(&br(g(2), g(1)), Flavor::Ordinary).unwrap()).unwrap();
        assert_eq!(via_basis, lam(&[1, 2], Flavor::Super).neg());
        assert!(theta(&lam(&[1, 2], Flavor::Super)).is_err());
    }

    #[test]
    fn lie3_permutation_matrices() {
        let f = Flavor::Ordinary;
        let t = LabelPermutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(lam(&[1, 2, 3], f).permute_generators(&t, false).unwrap(), lam(&[2, 1, 3], f));
        assert_eq!(lam(&[2, 1, 3], f).permute_generators(&t, false).unwrap(), lam(&[1, 2, 3], f));
        let c = LabelPermutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(lam(&[1, 2, 3], f).permute_generators(&c, false).unwrap(), lam(&[2, 1, 3], f).neg());
        assert_eq!(
            lam(&[2, 1, 3], f).permute_generators(&c, false).unwrap(),
            lam(&[1, 2, 3], f).add(&lam(&[2, 1, 3], f).neg()).unwrap()
        );
    }

    #[test]
    fn parse_and_print() {
        let p = parse_bracket_sum("-[a,[b,[c,[d,e]]]]").unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].0, BigInt::from(-1));
        let names = p.names.clone().unwrap();
        assert_eq!(names, vec!["a", "b", "c", "d", "e"]);
        let e = normalize_sum(&p.terms, Flavor::Super).unwrap();
        assert_eq!(e.to_text_named(Some(&names)), "-[a,[b,[c,[d,e]]]]");

        let p = parse_bracket_sum("[[1,2],3] - 2*[2,[1,3]] + 3[1,[2,3]]").unwrap();
        assert!(p.names.is_none());
        assert_eq!(p.terms[1].0, BigInt::from(-2));
        assert_eq!(p.terms[2].0, BigInt::from(3));
        assert!(parse_bracket_sum("[1,2").is_err());
        assert!(parse_bracket_sum("[1,2] [1,2]").is_err());
    }

    #[test]
    fn odd_generator_identities_hold() {
        // Odd generators a..e = 1..5.
        let f = Flavor::Super;
        let lhs = normalize_sum(
            &parse_bracket_sum("[[1,2],[3,[4,5]]] - [1,[2,[3,[4,5]]]] - [2,[1,[3,[4,5]]]]").unwrap().terms,
            f,
        )
        .unwrap();
        assert!(lhs.is_zero());
        let lhs = normalize_sum(
            &parse_bracket_sum("[1,[[2,3],[4,5]]] - [[2,3],[1,[4,5]]] + [[4,5],[1,[2,3]]]").unwrap().terms,
            f,
        )
        .unwrap();
        assert!(lhs.is_zero());
        let lhs =
            normalize_sum(&parse_bracket_sum("[3,[4,5]] + [4,[5,3]] + [5,[3,4]]").unwrap().terms, f).unwrap();
        assert!(lhs.is_zero());
    }
}
