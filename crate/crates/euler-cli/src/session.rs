//! Session execution: binds declared names to rings, ideals, points, rows,
//! and symbols, runs commands against `euler-core`, and emits a transcript
//! whose bytes depend only on the session text, the flags, and the seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use euler_core::{
    compose, fold_map, inverse, jouanolou_device, move_point, phi, provably_equal,
    reduce_to_single, segre_class, weak_class, CoefficientField, EulerSum, EulerSymbol,
    FactorRegistry, IdealHandle, Ledger, MonomialOrder, MoveConfig, PresentedRing, QuadricPoint,
    RingElement, UnimodularRow, Verdict,
};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grammar::{Assertion, Command, FieldSpec, Statement, SumExpr, SymbolRef};

/// Flags that shape execution; all have scriptable defaults.
#[derive(Debug, Clone)]
pub struct SessionOptions {
    pub seed: u64,
    pub attempts: usize,
    pub degree_cap: u32,
    pub witnesses: bool,
    pub order: MonomialOrder,
}

impl Default for SessionOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            attempts: 64,
            degree_cap: 3,
            witnesses: false,
            order: MonomialOrder::DegRevLex,
        }
    }
}

/// Execution failure for one statement. The message already names the
/// originating statement; the two kinds map to exit codes 1 and 3.
#[derive(Debug, Clone)]
pub enum SessionError {
    /// A failed `assert` statement.
    Assertion(String),
    /// A name resolution or construction failure.
    Semantic(String),
}

impl SessionError {
    pub fn message(&self) -> &str {
        match self {
            SessionError::Assertion(m) | SessionError::Semantic(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            SessionError::Assertion(_) => 1,
            SessionError::Semantic(_) => 3,
        }
    }
}

/// A running session: named objects, the homotopy ledger, the product
/// registry, and the master random stream.
///
/// Every randomized command (`move`, `compose`, `inverse`, `euler-reduce`,
/// `phi`) draws one 64-bit sub-seed from the master stream, in statement
/// order, and runs on a fresh generator seeded with it. Deterministic
/// commands draw nothing, so inserting or removing them never shifts the
/// randomness seen by the rest of the session.
pub struct Session {
    opts: SessionOptions,
    config: MoveConfig,
    master: ChaCha8Rng,
    rings: BTreeMap<String, PresentedRing>,
    ideals: BTreeMap<String, IdealHandle>,
    points: BTreeMap<String, QuadricPoint>,
    rows: BTreeMap<String, UnimodularRow>,
    symbols: BTreeMap<String, EulerSymbol>,
    ledger: Ledger,
    registry: FactorRegistry,
}

impl Session {
    pub fn new(opts: SessionOptions) -> Self {
        let config = MoveConfig { attempts: opts.attempts, degree_cap: opts.degree_cap };
        let master = ChaCha8Rng::seed_from_u64(opts.seed);
        Self {
            opts,
            config,
            master,
            rings: BTreeMap::new(),
            ideals: BTreeMap::new(),
            points: BTreeMap::new(),
            rows: BTreeMap::new(),
            symbols: BTreeMap::new(),
            ledger: Ledger::new(),
            registry: FactorRegistry::new(),
        }
    }

    fn subseeded_rng(&mut self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.master.next_u64())
    }

    fn semantic(head: &str, detail: impl std::fmt::Display) -> SessionError {
        SessionError::Semantic(format!("{head} : {detail}"))
    }

    fn ring(&self, head: &str, name: &str) -> Result<&PresentedRing, SessionError> {
        self.rings
            .get(name)
            .ok_or_else(|| Self::semantic(head, format!("unknown ring '{name}'")))
    }

    fn ideal(&self, head: &str, name: &str) -> Result<&IdealHandle, SessionError> {
        self.ideals
            .get(name)
            .ok_or_else(|| Self::semantic(head, format!("unknown ideal '{name}'")))
    }

    fn point(&self, head: &str, name: &str) -> Result<&QuadricPoint, SessionError> {
        self.points
            .get(name)
            .ok_or_else(|| Self::semantic(head, format!("unknown point '{name}'")))
    }

    fn row(&self, head: &str, name: &str) -> Result<&UnimodularRow, SessionError> {
        self.rows
            .get(name)
            .ok_or_else(|| Self::semantic(head, format!("unknown row '{name}'")))
    }

    fn parse_elements(
        head: &str,
        ring: &PresentedRing,
        texts: &[String],
    ) -> Result<Vec<RingElement>, SessionError> {
        texts
            .iter()
            .map(|t| ring.element(t).map_err(|e| Self::semantic(head, e)))
            .collect()
    }

    fn field(head: &str, spec: FieldSpec) -> Result<CoefficientField, SessionError> {
        match spec {
            FieldSpec::Rationals => Ok(CoefficientField::rationals()),
            FieldSpec::Prime(p) => CoefficientField::prime(p).map_err(|e| Self::semantic(head, e)),
        }
    }

    /// Resolves a formal sum: named symbols must exist; literals name an
    /// ideal and give orientation representatives in its ring.
    fn resolve_sum(&self, head: &str, sum: &SumExpr) -> Result<EulerSum, SessionError> {
        let mut terms = Vec::new();
        for (coeff, sym_ref) in &sum.terms {
            let sym = match sym_ref {
                SymbolRef::Named(name) => self
                    .symbols
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Self::semantic(head, format!("unknown symbol '{name}'")))?,
                SymbolRef::Literal { ideal, reps } => {
                    let handle = self.ideal(head, ideal)?.clone();
                    let reps = Self::parse_elements(head, handle.ring(), reps)?;
                    EulerSymbol::new(handle, reps).map_err(|e| Self::semantic(head, e))?
                }
            };
            terms.push((*coeff, sym));
        }
        let ring = terms
            .first()
            .map(|(_, s)| s.ring().clone())
            .ok_or_else(|| Self::semantic(head, "empty sum"))?;
        let n = terms
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(_, s)| s.n())
            .max()
            .unwrap_or(1);
        EulerSum::new(&ring, n, terms).map_err(|e| Self::semantic(head, e))
    }

    /// Re-runs the defining validation for any named object.
    fn revalidate(&self, head: &str, name: &str) -> Result<(), SessionError> {
        if let Some(p) = self.points.get(name) {
            return QuadricPoint::new(p.n(), p.a().to_vec(), p.b().to_vec(), p.s().clone())
                .map(|_| ())
                .map_err(|e| Self::semantic(head, e));
        }
        if let Some(r) = self.rows.get(name) {
            return UnimodularRow::new(r.ring(), r.entries().to_vec())
                .map(|_| ())
                .map_err(|e| Self::semantic(head, e));
        }
        if let Some(s) = self.symbols.get(name) {
            return EulerSymbol::new(s.ideal().clone(), s.reps().to_vec())
                .map(|_| ())
                .map_err(|e| Self::semantic(head, e));
        }
        if self.ideals.contains_key(name) || self.rings.contains_key(name) {
            return Ok(());
        }
        Err(Self::semantic(head, format!("unknown name '{name}'")))
    }

    fn ledger_witness_lines(&self, before: usize, lines: &mut Vec<String>) {
        for (label, _) in self.ledger.homotopies().skip(before) {
            lines.push(format!("  homotopy recorded: {label}"));
        }
    }

    /// Executes one statement. Declarations are silent; commands return
    /// transcript lines (the echoed statement, a colon, and the result).
    pub fn execute(&mut self, st: &Statement) -> Result<Vec<String>, SessionError> {
        let head = st.head();
        match st {
            Statement::RingDecl { name, field, vars, relations } => {
                let field = Self::field(&head, *field)?;
                let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
                let rel_refs: Vec<&str> = relations.iter().map(String::as_str).collect();
                let ring = PresentedRing::parse_new(field, &var_refs, &rel_refs, self.opts.order)
                    .map_err(|e| Self::semantic(&head, e))?;
                self.rings.insert(name.clone(), ring);
                Ok(Vec::new())
            }
            Statement::IdealDecl { name, gens, ring } => {
                let ring = self.ring(&head, ring)?.clone();
                let gens = Self::parse_elements(&head, &ring, gens)?;
                self.ideals.insert(name.clone(), IdealHandle::new(&ring, gens));
                Ok(Vec::new())
            }
            Statement::PointDecl { name, q, ring, a, b, s } => {
                let ring = self.ring(&head, ring)?.clone();
                let n = q / 2;
                let a = Self::parse_elements(&head, &ring, a)?;
                let b = Self::parse_elements(&head, &ring, b)?;
                let s = ring.element(s).map_err(|e| Self::semantic(&head, e))?;
                let point = QuadricPoint::new(n, a, b, s).map_err(|e| Self::semantic(&head, e))?;
                self.points.insert(name.clone(), point);
                Ok(Vec::new())
            }
            Statement::RowDecl { name, entries, ring } => {
                let ring = self.ring(&head, ring)?.clone();
                let entries = Self::parse_elements(&head, &ring, entries)?;
                let row =
                    UnimodularRow::new(&ring, entries).map_err(|e| Self::semantic(&head, e))?;
                self.rows.insert(name.clone(), row);
                Ok(Vec::new())
            }
            Statement::Command(cmd) => self.run_command(&head, cmd),
            Statement::Assert(assertion) => self.run_assert(&head, assertion),
        }
    }

    fn run_command(&mut self, head: &str, cmd: &Command) -> Result<Vec<String>, SessionError> {
        match cmd {
            Command::Validate { target } => {
                self.revalidate(head, target)?;
                Ok(vec![format!("{head} : ok")])
            }
            Command::IdealOf { target } => {
                let ideal = if let Some(p) = self.points.get(target) {
                    p.ideal()
                } else if let Some(s) = self.symbols.get(target) {
                    s.ideal().clone()
                } else if let Some(i) = self.ideals.get(target) {
                    i.clone()
                } else {
                    return Err(Self::semantic(head, format!("unknown name '{target}'")));
                };
                Ok(vec![format!("{head} : {ideal}")])
            }
            Command::Segre { name, ideal, reps } => {
                let handle = self.ideal(head, ideal)?.clone();
                let reps = Self::parse_elements(head, handle.ring(), reps)?;
                let point = segre_class(&handle, &reps).map_err(|e| Self::semantic(head, e))?;
                let line = format!("{head} : {point}");
                self.points.insert(name.clone(), point);
                Ok(vec![line])
            }
            Command::Move { name, point, avoid } => {
                let source = self.point(head, point)?.clone();
                let mut avoid_ideals = Vec::new();
                for a in avoid {
                    avoid_ideals.push(self.ideal(head, a)?.clone());
                }
                let mut rng = self.subseeded_rng();
                let outcome = move_point(&source, &avoid_ideals, &self.config, &mut rng)
                    .map_err(|e| Self::semantic(head, e))?;
                let mu = outcome
                    .mu
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let mut lines =
                    vec![format!("{head} : mu = ({mu}), I({name}) = {}", outcome.point.ideal())];
                if self.opts.witnesses {
                    lines.push(format!("  homotopy: {}", outcome.homotopy.point()));
                }
                self.points.insert(name.clone(), outcome.point);
                Ok(lines)
            }
            Command::Compose { name, left, right } => {
                let p = self.point(head, left)?.clone();
                let q = self.point(head, right)?.clone();
                let before = self.ledger.len();
                let mut rng = self.subseeded_rng();
                let out = compose(&p, &q, &mut self.ledger, &self.config, &mut rng)
                    .map_err(|e| Self::semantic(head, e))?;
                let mut lines = vec![format!("{head} : I({name}) = {}", out.ideal())];
                if self.opts.witnesses {
                    if let Ok((eu, ew)) = p.ideal().comaximal_witness(&q.ideal()) {
                        lines.push(format!("  comaximal witness: ({eu}) + ({ew}) = 1"));
                    }
                    self.ledger_witness_lines(before, &mut lines);
                }
                self.points.insert(name.clone(), out);
                Ok(lines)
            }
            Command::Inverse { name, source } => {
                let p = self.point(head, source)?.clone();
                let before = self.ledger.len();
                let mut rng = self.subseeded_rng();
                let out = inverse(&p, &mut self.ledger, &self.config, &mut rng)
                    .map_err(|e| Self::semantic(head, e))?;
                let mut lines = vec![format!("{head} : I({name}) = {}", out.ideal())];
                if self.opts.witnesses {
                    self.ledger_witness_lines(before, &mut lines);
                }
                self.points.insert(name.clone(), out);
                Ok(lines)
            }
            Command::Equal { left, right } => {
                let p = self.point(head, left)?;
                let q = self.point(head, right)?;
                let verdict = provably_equal(p, q, &self.ledger);
                let mut lines = Vec::new();
                match &verdict {
                    Verdict::Equal(steps) if steps.len() == 1 => {
                        lines.push(format!("{head} : equal ({})", steps[0]));
                    }
                    Verdict::Equal(steps) => {
                        lines.push(format!("{head} : equal ({} steps)", steps.len()));
                    }
                    Verdict::Unknown => lines.push(format!("{head} : unknown")),
                }
                if self.opts.witnesses {
                    if let Verdict::Equal(steps) = &verdict {
                        for step in steps {
                            lines.push(format!("  step: {step}"));
                        }
                    }
                }
                Ok(lines)
            }
            Command::EulerReduce { name, sum } => {
                let sum = self.resolve_sum(head, sum)?;
                let before = self.ledger.len();
                let mut rng = self.subseeded_rng();
                let out = reduce_to_single(
                    &sum,
                    &mut self.ledger,
                    &mut self.registry,
                    &self.config,
                    &mut rng,
                )
                .map_err(|e| Self::semantic(head, e))?;
                let step_word = if out.steps == 1 { "step" } else { "steps" };
                let mut lines =
                    vec![format!("{head} : {} via {} {step_word}", out.symbol, out.steps)];
                if self.opts.witnesses {
                    self.ledger_witness_lines(before, &mut lines);
                }
                self.symbols.insert(name.clone(), out.symbol);
                Ok(lines)
            }
            Command::Phi { name, row } => {
                let row = self.row(head, row)?.clone();
                let mut rng = self.subseeded_rng();
                let out =
                    phi(&row, &self.config, &mut rng).map_err(|e| Self::semantic(head, e))?;
                let mut lines = vec![format!("{head} : {}", out.symbol)];
                if self.opts.witnesses {
                    for mv in &out.moves {
                        lines.push(format!(
                            "  move: entry {} += ({}) * entry {}",
                            mv.i, mv.lambda, mv.j
                        ));
                    }
                }
                self.symbols.insert(name.clone(), out.symbol);
                Ok(lines)
            }
            Command::WeakClass { sum } => {
                let sum = self.resolve_sum(head, sum)?;
                let (groups, degree) = weak_class(&sum).map_err(|e| Self::semantic(head, e))?;
                let mut lines = vec![format!("{head} : degree {degree}")];
                if self.opts.witnesses {
                    for (ideal, mult) in &groups {
                        lines.push(format!("  multiplicity {mult} at {ideal}"));
                    }
                }
                Ok(lines)
            }
            Command::FoldMap { n, field } => {
                let field = Self::field(head, *field)?;
                let fold = fold_map(*n, field).map_err(|e| Self::semantic(head, e))?;
                let nvars = fold.device().ring().nvars();
                let mut lines = vec![format!(
                    "{head} : verified ({nvars} variables, sections restrict to the identity)"
                )];
                if self.opts.witnesses {
                    lines.push(format!("  interpolating point: {}", fold.point()));
                }
                Ok(lines)
            }
            Command::Jouanolou { n, field } => {
                let field = Self::field(head, *field)?;
                let device = jouanolou_device(*n, field).map_err(|e| Self::semantic(head, e))?;
                let nvars = device.ring().nvars();
                let nrels = device.ring().relations().len();
                let mut lines = vec![format!("{head} : {nvars} variables, {nrels} relations")];
                if self.opts.witnesses {
                    let mut desc = String::new();
                    let _ = write!(desc, "  ring: {}", device.ring().describe());
                    lines.push(desc);
                }
                Ok(lines)
            }
        }
    }

    fn run_assert(&mut self, head: &str, assertion: &Assertion) -> Result<Vec<String>, SessionError> {
        match assertion {
            Assertion::Equal { left, right } => {
                let p = self.point(head, left)?;
                let q = self.point(head, right)?;
                if provably_equal(p, q, &self.ledger).is_equal() {
                    Ok(vec![format!("{head} : ok")])
                } else {
                    Err(SessionError::Assertion(format!("{head} : equality not certified")))
                }
            }
            Assertion::Valid { target } => match self.revalidate(head, target) {
                Ok(()) => Ok(vec![format!("{head} : ok")]),
                Err(e) => Err(SessionError::Assertion(format!(
                    "{head} : validation failed ({})",
                    e.message()
                ))),
            },
        }
    }
}

/// Runs a full parsed session, printing transcript lines through `out`.
/// Stops at the first failing statement and returns its error.
pub fn run_statements(
    session: &mut Session,
    statements: &[Statement],
    mut out: impl FnMut(&str),
) -> Result<(), SessionError> {
    for st in statements {
        for line in session.execute(st)? {
            out(&line);
        }
    }
    Ok(())
}
