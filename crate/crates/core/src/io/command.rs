//! Command dispatch for `apw`. Each command reads its inputs, runs the
//! kernel and returns a [`Report`] plus, for `quotient`, `cayley` and
//! `isomorphism`, an emitted structure document.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::apartness::validate_structure;
use crate::carrier::Carrier;
use crate::cayley::cayley_embedding;
use crate::enumeration::catalog::{Catalog, CatalogConfig, Provenance, RELATION_BOUND, SEMIGROUP_BOUND};
use crate::enumeration::enumerate::hard_bound;
use crate::enumeration::generate::letters;
use crate::enumeration::suite::{theorem_suite, SuiteOptions};
use crate::enumeration::{
    counterexample_search, enumerate, oracle_agreement, parse_conjunction, Base, ImplicationQuery, Kind, ORACLE_RATE,
    ORACLE_SEED,
};
use crate::error::{Error, Result};
use crate::morphism::{analyze_mapping, first_isomorphism, second_isomorphism, Decomposition};
use crate::quotient::{build_quotient, coequivalence_quotient, QuotientPresentation};
use crate::relation::BinaryRelation;
use crate::semigroup::{
    classical_lemma_check, complement_lemma_check, validate_semigroup,
};
use crate::subset::Subset;
use crate::ApartnessRelation;

use super::document::{digest, MappingDocument, Structure, StructureDocument};
use super::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Command {
    #[default]
    Check,
    Classify,
    Quotient,
    Isomorphism,
    Cayley,
    Enumerate,
    Verify,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Check,
        Command::Classify,
        Command::Quotient,
        Command::Isomorphism,
        Command::Cayley,
        Command::Enumerate,
        Command::Verify,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Classify => "classify",
            Command::Quotient => "quotient",
            Command::Isomorphism => "isomorphism",
            Command::Cayley => "cayley",
            Command::Enumerate => "enumerate",
            Command::Verify => "verify",
        }
    }

    pub fn parse(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown command `{s}`")))
    }

    /// Commands whose `--out` receives a structure document.
    pub fn emits(self) -> bool {
        matches!(self, Command::Quotient | Command::Isomorphism | Command::Cayley)
    }
}

/// A parsed command line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub subset: Option<String>,
    pub relation: Option<String>,
    pub epsilon: Option<String>,
    pub kappa: Option<String>,
    pub map: Option<PathBuf>,
    pub kind: Option<String>,
    pub filter: Option<String>,
    pub max_size: Option<usize>,
    /// 0 uses the default pool size.
    pub workers: usize,
    pub out: Option<PathBuf>,
}

impl Invocation {
    pub fn new(command: Command) -> Self {
        Invocation {
            command,
            ..Invocation::default()
        }
    }

    /// The command line as echoed in reports. Worker count and output
    /// format are left out so that they cannot change a report.
    pub fn echo(&self) -> String {
        let mut parts = vec!["apw".to_string(), self.command.as_str().to_string()];
        let mut flag = |name: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("--{name}"));
                parts.push(if v.is_empty() || v.contains(' ') { format!("'{v}'") } else { v });
            }
        };
        flag("subset", self.subset.clone());
        flag("relation", self.relation.clone());
        flag("epsilon", self.epsilon.clone());
        flag("kappa", self.kappa.clone());
        flag("map", self.map.as_ref().map(|p| p.display().to_string()));
        flag("kind", self.kind.clone());
        flag("filter", self.filter.clone());
        flag("max-size", self.max_size.map(|n| n.to_string()));
        flag("out", self.out.as_ref().map(|p| p.display().to_string()));
        if let Some(p) = &self.input {
            parts.push(p.display().to_string());
        }
        parts.join(" ")
    }
}

/// The result of a command: its report and, for commands that produce one,
/// the emitted structure document.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub emitted: Option<StructureDocument>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code()
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn require_input(inv: &Invocation) -> Result<(&Path, Vec<u8>)> {
    let path = inv
        .input
        .as_deref()
        .ok_or_else(|| Error::Usage(format!("`{}` needs an input document", inv.command.as_str())))?;
    Ok((path, read_file(path)?))
}

fn load(inv: &Invocation) -> Result<(Structure, String)> {
    let (_, bytes) = require_input(inv)?;
    let s = StructureDocument::from_bytes(&bytes)?.parse()?;
    Ok((s, digest(&bytes)))
}

fn reject_flags(inv: &Invocation, allowed: &[&str]) -> Result<()> {
    let given = [
        ("subset", inv.subset.is_some()),
        ("relation", inv.relation.is_some()),
        ("epsilon", inv.epsilon.is_some()),
        ("kappa", inv.kappa.is_some()),
        ("map", inv.map.is_some()),
        ("kind", inv.kind.is_some()),
        ("filter", inv.filter.is_some()),
        ("max-size", inv.max_size.is_some()),
    ];
    match given.iter().find(|(name, set)| *set && !allowed.contains(name)) {
        Some((name, _)) => Err(Error::Usage(format!(
            "flag --{name} does not apply to `{}`",
            inv.command.as_str()
        ))),
        None => Ok(()),
    }
}

/// Runs one command. Errors are input, usage or precondition problems; a
/// report with failed checks is still `Ok`.
pub fn run_command(inv: &Invocation) -> Result<Outcome> {
    let mut report = Report::new(inv.echo());
    let emitted = match inv.command {
        Command::Check => {
            reject_flags(inv, &[])?;
            check(inv, &mut report)?;
            None
        }
        Command::Classify => {
            reject_flags(inv, &["subset", "relation"])?;
            classify(inv, &mut report)?;
            None
        }
        Command::Quotient => {
            reject_flags(inv, &["epsilon", "kappa"])?;
            Some(quotient(inv, &mut report)?)
        }
        Command::Isomorphism => {
            reject_flags(inv, &["map", "kappa"])?;
            Some(isomorphism(inv, &mut report)?)
        }
        Command::Cayley => {
            reject_flags(inv, &[])?;
            Some(cayley(inv, &mut report)?)
        }
        Command::Enumerate => {
            reject_flags(inv, &["kind", "filter", "max-size"])?;
            run_enumerate(inv, &mut report)?;
            None
        }
        Command::Verify => {
            reject_flags(inv, &["max-size"])?;
            verify(inv, &mut report)?;
            None
        }
    };
    if let Some(doc) = &emitted {
        match &inv.out {
            Some(p) => report.datum("written", p.display().to_string()),
            None => report.datum("document", doc.to_json()),
        }
    }
    Ok(Outcome { report, emitted })
}

fn check(inv: &Invocation, report: &mut Report) -> Result<()> {
    let (_, bytes) = require_input(inv)?;
    report.digest = Some(digest(&bytes));
    let raw = StructureDocument::from_bytes(&bytes)?.load()?;
    let c = raw.carrier.clone();
    let axioms = validate_structure(&c, &raw.apartness)?;
    for (name, v) in axioms.required() {
        report.check_verdict(name, v, &c);
    }
    report.property("Ap4", &axioms.tight, &c);
    if !axioms.accepted() {
        if raw.table.is_some() {
            report.notes.push("table not checked: the apartness is invalid".into());
        }
        return Ok(());
    }
    let ap = ApartnessRelation::new(c.clone(), raw.apartness.clone())?;
    if let Some(entries) = &raw.table {
        let t = validate_semigroup(&ap, entries)?;
        for (name, v) in t.checks() {
            report.check_verdict(name, v, &c);
        }
    }
    let names: Vec<String> = raw.relations.keys().chain(raw.subsets.keys()).cloned().collect();
    if let Err(e) = raw.validate() {
        report.check("named relations and subsets", false, None, Some(e.to_string()));
    } else if !names.is_empty() {
        report.check("named relations and subsets", true, None, None);
    }
    report.datum("elements", c.len());
    report.datum("classes", c.classes().iter().map(|&m| c.render_mask(m)).collect::<Vec<_>>());
    Ok(())
}

fn classify(inv: &Invocation, report: &mut Report) -> Result<()> {
    let (s, d) = load(inv)?;
    report.digest = Some(d);
    let mut targets: Vec<(String, bool)> = Vec::new();
    if let Some(r) = &inv.relation {
        s.relation(r)?;
        targets.push((r.clone(), true));
    }
    if let Some(y) = &inv.subset {
        s.subset(y)?;
        targets.push((y.clone(), false));
    }
    let prefixed = targets.is_empty();
    if prefixed {
        targets.extend(s.relations.keys().map(|k| (k.clone(), true)));
        targets.extend(s.subsets.keys().map(|k| (k.clone(), false)));
    }
    if targets.is_empty() {
        return Err(Error::Usage("the document has no named relations or subsets to classify".into()));
    }
    for (name, is_relation) in targets {
        let p = if prefixed { format!("{name}.") } else { String::new() };
        if is_relation {
            classify_relation(&s, s.relation(&name)?, &p, report);
        } else {
            classify_subset(&s, s.subset(&name)?, &p, report)?;
        }
    }
    Ok(())
}

fn classify_relation(s: &Structure, alpha: &BinaryRelation, p: &str, report: &mut Report) {
    let ap = &s.apartness;
    let c = ap.carrier();
    let k = ap.classify_matrix(alpha.matrix());
    report.flag(format!("{p}inhabited"), k.inhabited);
    for (name, v) in k.flags() {
        report.property(format!("{p}{name}"), v, c);
    }
    let comp = ap.a_complement_matrix(alpha.matrix());
    report.datum(format!("{p}a_complement"), c.render_pairs(&comp));
    report.datum(format!("{p}logical_complement"), c.render_pairs(&alpha.matrix().complement()));
    report.check(
        format!("{p}a-complement disjoint from the relation"),
        comp.intersection(alpha.matrix()).is_empty(),
        None,
        None,
    );
    if !k.co_quasiorder.holds {
        return;
    }
    let t = alpha.matrix();
    report.check(format!("{p}a-complement equals logical complement"), comp == t.complement(), None, None);
    let classes = |cols: bool| -> BTreeMap<String, String> {
        let m = if cols { t.transpose() } else { t.clone() };
        (0..c.len()).map(|a| (c.name(a).to_string(), c.render_mask(m.row(a)))).collect()
    };
    report.datum(format!("{p}left_classes"), classes(false));
    report.datum(format!("{p}right_classes"), classes(true));
    let sd_classes = (0..c.len()).all(|a| {
        [t.row(a), t.transpose().row(a)]
            .into_iter()
            .all(|m| ap.classify_subset_mask(m).is_sd.holds && ap.apart_from_all(a, m))
    });
    report.check(format!("{p}classes are sd and apart from their element"), sd_classes, None, None);
    if let Some(sg) = &s.table {
        let r = sg.verify_positive_theorems(alpha).expect("checked co-quasiorder on the same carrier");
        for (name, v) in r.properties.flags() {
            report.property(format!("{p}{name}"), v, c);
        }
        report.check_verdict(format!("{p}complement positive implies right classes shrink"), &r.t1, c);
        report.check(format!("{p}five positivity conditions agree"), r.t2_consistent, None, None);
        report.check(format!("{p}three cm conditions agree"), r.t3_consistent, None, None);
        report.check_verdict(format!("{p}complement cm-property follows"), &r.t4, c);
        if k.co_equivalence.holds {
            let cc = crate::quotient::cocongruence(sg, t);
            report.property(format!("{p}co_congruence"), &cc.co_congruence, c);
        }
    }
}

fn classify_subset(s: &Structure, y: &Subset, p: &str, report: &mut Report) -> Result<()> {
    let ap = &s.apartness;
    let c = ap.carrier();
    let k = ap.classify_subset(y)?;
    report.property(format!("{p}d"), &k.is_d, c);
    report.property(format!("{p}sd"), &k.is_sd, c);
    report.property(format!("{p}qd"), &k.is_qd, c);
    report.property(format!("{p}complements_equal"), &k.complements_equal, c);
    report.datum(format!("{p}a_complement"), k.a_complement.to_string());
    report.datum(format!("{p}logical_complement"), k.logical_complement.to_string());
    report.check(
        format!("{p}a-complement within logical complement"),
        k.a_complement.is_subset_of(&k.logical_complement),
        None,
        None,
    );
    report.check(format!("{p}sd implies qd"), !k.is_sd.holds || k.is_qd.holds, None, None);
    report.check(
        format!("{p}qd implies equal complements"),
        !k.is_qd.holds || k.complements_equal.holds,
        None,
        None,
    );
    if k.is_sd.holds {
        let tau = ap.coquasiorder_from_sd_subset(y)?;
        report.datum(format!("{p}coquasiorder"), tau.to_string());
    }
    if let Some(sg) = &s.table {
        let f = sg.classify_subset(y)?;
        for (name, v) in f.flags() {
            report.property(format!("{p}{name}"), v, c);
        }
        let lemma = complement_lemma_check(sg, y)?;
        report.check(
            format!("{p}complement lemma"),
            lemma.convex_branch.consistent() && lemma.ideal_branch.consistent(),
            None,
            None,
        );
        report.check(format!("{p}classical complement lemma"), classical_lemma_check(sg, y).consistent(), None, None);
    }
    Ok(())
}

fn quotient_structure(q: &QuotientPresentation) -> Structure {
    Structure::bare(q.quotient().clone(), q.table().cloned())
}

fn report_quotient(q: &QuotientPresentation, report: &mut Report) {
    let c = q.base().carrier();
    for (name, v) in q.checks() {
        report.check_verdict(name.clone(), v, c);
    }
    let qr = q.quotient().report();
    for (name, v) in qr.required() {
        report.check_verdict(format!("quotient {name}"), v, q.quotient().carrier());
    }
    report.property("quotient Ap4", &qr.tight, q.quotient().carrier());
    if let Some(t) = q.table() {
        for (name, v) in t.report().checks() {
            report.check_verdict(format!("quotient {name}"), v, t.carrier());
        }
    }
    let qc = q.quotient().carrier();
    let classes: BTreeMap<String, String> = q
        .classes()
        .iter()
        .enumerate()
        .map(|(i, &m)| (qc.name(i).to_string(), c.render_mask(m)))
        .collect();
    report.datum("classes", classes);
}

fn quotient(inv: &Invocation, report: &mut Report) -> Result<StructureDocument> {
    let (s, d) = load(inv)?;
    report.digest = Some(d);
    let kappa_name = inv
        .kappa
        .as_deref()
        .ok_or_else(|| Error::Usage("`quotient` needs --kappa NAME".into()))?;
    let kappa = s.relation(kappa_name)?;
    let q = match &inv.epsilon {
        Some(e) => build_quotient(&s.apartness, s.relation(e)?, kappa, s.table.as_ref())?,
        None => {
            report.notes.push("no --epsilon given: quotient by the a-complement of kappa".into());
            coequivalence_quotient(&s.apartness, kappa, s.table.as_ref())?
        }
    };
    report_quotient(&q, report);
    Ok(quotient_structure(&q).to_document())
}

fn report_decomposition(d: &Decomposition, report: &mut Report) {
    report_quotient(&d.quotient, report);
    let c = d.quotient.base().carrier();
    for (name, v) in &d.checks {
        report.check_verdict(name.clone(), v, c);
    }
    for (name, v) in &d.properties {
        report.property(name.clone(), v, c);
    }
    let qc = d.quotient.quotient().carrier();
    let cc = d.theta.cod().carrier();
    let theta: BTreeMap<String, String> = (0..qc.len())
        .map(|i| (qc.name(i).to_string(), cc.name(d.theta.apply(i)).to_string()))
        .collect();
    report.datum("theta", theta);
}

fn isomorphism(inv: &Invocation, report: &mut Report) -> Result<StructureDocument> {
    let (s, d) = load(inv)?;
    report.digest = Some(d);
    let map_path = inv
        .map
        .as_deref()
        .ok_or_else(|| Error::Usage("`isomorphism` needs --map FILE".into()))?;
    let (cod, f) = MappingDocument::from_bytes(&read_file(map_path)?)?.resolve(&s.apartness)?;
    let a = analyze_mapping(&f);
    let c = s.carrier();
    for (name, v) in a.flags() {
        report.property(format!("f {name}"), v, c);
    }
    report.datum("kernel", a.kernel.to_string());
    report.datum("cokernel", a.cokernel.to_string());
    let dec = match &inv.kappa {
        Some(k) => second_isomorphism(&f, s.relation(k)?)?,
        None => {
            let tables = match (&s.table, &cod.table) {
                (Some(dt), Some(ct)) => Some((dt, ct)),
                _ => None,
            };
            first_isomorphism(&f, tables)?
        }
    };
    report_decomposition(&dec, report);
    Ok(quotient_structure(&dec.quotient).to_document())
}

fn cayley(inv: &Invocation, report: &mut Report) -> Result<StructureDocument> {
    let (s, d) = load(inv)?;
    report.digest = Some(d);
    let sg = s
        .table
        .as_ref()
        .ok_or_else(|| Error::Usage("`cayley` needs a document with a table".into()))?;
    let e = cayley_embedding(sg)?;
    let c = s.carrier();
    for (name, v) in &e.checks {
        report.check_verdict(name.clone(), v, c);
    }
    match &e.function_space {
        Some(fs) => {
            for (name, ok) in &fs.checks {
                report.check(name.clone(), *ok, None, Some(format!("{} maps", fs.maps)));
            }
        }
        None => report.notes.push("function space too large to materialize; pointwise checks only".into()),
    }
    let s1 = e.adjoined.extended.carrier();
    let translations: BTreeMap<String, String> = e
        .translations
        .iter()
        .enumerate()
        .map(|(a, t)| {
            let graph: Vec<String> = t.iter().enumerate().map(|(x, &y)| format!("{}->{}", s1.name(x), s1.name(y))).collect();
            (format!("L_{}", c.name(a)), graph.join(" "))
        })
        .collect();
    report.datum("translations", translations);
    let cmp: Vec<String> = e
        .comparison
        .iter()
        .map(|(a, b, p)| format!("L_{} {} L_{}", c.name(*a), p.as_str(), c.name(*b)))
        .collect();
    report.datum("comparison", cmp);
    Ok(Structure::bare(e.image.apartness().clone(), Some(e.image.clone())).to_document())
}

#[derive(Serialize)]
struct Item {
    index: u64,
    object: String,
}

fn run_enumerate(inv: &Invocation, report: &mut Report) -> Result<()> {
    let kind = Kind::parse(
        inv.kind
            .as_deref()
            .ok_or_else(|| Error::Usage("`enumerate` needs --kind apartness|relation|subset|semigroup".into()))?,
    )?;
    let filter = inv.filter.clone().unwrap_or_default();
    let is_query = ["=>", "⇒", "->"].iter().any(|a| filter.contains(a));
    let base = match &inv.input {
        Some(_) => {
            let (s, d) = load(inv)?;
            report.digest = Some(d);
            Some(match s.table {
                Some(t) => Base::semigroup(t),
                None => Base::structure(s.apartness),
            })
        }
        None => None,
    };
    if is_query || (base.is_none() && matches!(kind, Kind::Relation | Kind::Subset)) {
        let mut q = ImplicationQuery::parse(&filter, kind, 0)?;
        q.max_size = inv.max_size.unwrap_or(if q.needs_table() { SEMIGROUP_BOUND } else { RELATION_BOUND });
        let outcome = counterexample_search(&q, base.as_ref())?;
        report.datum("query", q.render());
        report.datum("search", &outcome);
        return Ok(());
    }
    let base = match base {
        Some(b) => b,
        None => {
            let n = inv
                .max_size
                .ok_or_else(|| Error::Usage("without an input document, --max-size gives the carrier size".into()))?;
            if n > hard_bound(kind) {
                return Err(Error::SizeBound {
                    what: format!("{} enumeration", kind.as_str()),
                    size: n,
                    bound: hard_bound(kind),
                });
            }
            if n == 0 {
                return Err(Error::EmptyCarrier);
            }
            let c = Carrier::discrete(letters(n))?;
            match kind {
                Kind::Apartness => Base::structure(ApartnessRelation::empty_on(c)),
                _ => Base::structure(ApartnessRelation::tight_on(c)),
            }
        }
    };
    let lits = parse_conjunction(&filter)?;
    let e = enumerate(kind, &base, &lits)?;
    let c = base.ap.carrier();
    report.datum("kind", kind.as_str());
    report.datum("filter", crate::enumeration::atoms::render_conjunction(&lits));
    report.datum("count", e.count);
    let items: Vec<Item> = e
        .items
        .iter()
        .enumerate()
        .map(|(i, o)| Item {
            index: i as u64,
            object: o.render(c),
        })
        .collect();
    report.datum("items", items);
    Ok(())
}

fn verify(inv: &Invocation, report: &mut Report) -> Result<()> {
    let max = inv.max_size.unwrap_or(RELATION_BOUND);
    let mut catalog = Catalog::build(CatalogConfig {
        max_structure: max,
        max_semigroup: max.min(SEMIGROUP_BOUND),
        ..CatalogConfig::default()
    })?;
    if let Some(path) = &inv.input {
        let bytes = read_file(path)?;
        report.digest = Some(digest(&bytes));
        let raw = StructureDocument::from_bytes(&bytes)?.load()?;
        let name = path.display().to_string();
        match ApartnessRelation::new(raw.carrier.clone(), raw.apartness.clone()) {
            Ok(ap) => {
                if let Some(entries) = raw.table {
                    catalog.add_semigroup_candidate(name.clone(), Provenance::User, ap.clone(), entries);
                }
                catalog.add_structure(name, Provenance::User, ap);
            }
            Err(e) => catalog.rejected.push(crate::enumeration::Rejected {
                name,
                provenance: Provenance::User,
                reason: e.to_string(),
            }),
        }
    }
    let suite = theorem_suite(&catalog, SuiteOptions { workers: inv.workers })?;
    for (name, t) in &suite.theorems {
        report.check(
            name.clone(),
            t.failed == 0,
            None,
            Some(format!("{} checked, {} failed", t.checked, t.failed)),
        );
    }
    let oracle = {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(inv.workers)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))?;
        pool.install(|| oracle_agreement(&catalog, ORACLE_SEED, ORACLE_RATE))
    };
    report.check(
        "oracle agreement",
        oracle.agrees(),
        oracle.disagreements.first().cloned(),
        Some(format!("{} comparisons, {} disagreements", oracle.total(), oracle.disagreements.len())),
    );
    report.datum(
        "catalog",
        BTreeMap::from([
            ("structures", catalog.structures.len()),
            ("semigroups", catalog.semigroups.len()),
            ("rejected", catalog.rejected.len()),
        ]),
    );
    report.datum("coverage", suite.coverage);
    report.datum("examples", &suite.examples);
    if !suite.failures.is_empty() {
        report.datum("failures", &suite.failures);
    }
    if !catalog.rejected.is_empty() {
        report.datum("rejected", &catalog.rejected);
    }
    report.datum(
        "oracle",
        serde_json::json!({
            "seed": format!("{:#x}", oracle.seed),
            "rate": format!("{}", oracle.rate),
            "sampled": oracle.sampled,
            "disagreements": oracle.disagreements,
        }),
    );
    report.notes.extend(suite.notes);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn doc(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let p = dir.path().join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    const C3: &str = r#"{"format": 1, "elements": ["a", "b", "c"], "apartness": [["a", "c"], ["b", "c"]],
        "subsets": {"A": ["a"]}, "relations": {"alpha": [["a", "c"], ["c", "a"]], "kappa": [["a", "c"], ["c", "a"], ["b", "c"], ["c", "b"]]}}"#;

    fn run(inv: Invocation) -> Outcome {
        run_command(&inv).unwrap()
    }

    #[test]
    fn check_reports_ap4_false_on_c3() {
        let dir = tempfile::tempdir().unwrap();
        let mut inv = Invocation::new(Command::Check);
        inv.input = Some(doc(&dir, "c3.json", C3));
        let o = run(inv);
        assert_eq!(o.exit_code(), 0);
        let ap4 = o.report.properties.iter().find(|p| p.name == "Ap4").unwrap();
        assert!(!ap4.value);
        assert_eq!(ap4.witness.as_deref(), Some("(a,b)"));
    }

    #[test]
    fn check_fails_on_broken_cotransitivity() {
        let dir = tempfile::tempdir().unwrap();
        let mut inv = Invocation::new(Command::Check);
        inv.input = Some(doc(&dir, "bad.json", r#"{"format": 1, "elements": ["a", "b", "c"], "apartness": [["a", "b"]]}"#));
        let o = run(inv);
        assert_eq!(o.exit_code(), 1);
        let ap3 = o.report.checks.iter().find(|c| c.name == "Ap3").unwrap();
        assert_eq!(ap3.witness.as_deref(), Some("(a,b,c)"));
    }

    #[test]
    fn classify_subset_on_c3() {
        let dir = tempfile::tempdir().unwrap();
        let mut inv = Invocation::new(Command::Classify);
        inv.input = Some(doc(&dir, "c3.json", C3));
        inv.subset = Some("A".into());
        let o = run(inv);
        assert_eq!(o.report.data["a_complement"], "{c}");
        assert_eq!(o.report.data["logical_complement"], "{b,c}");
        let qd = o.report.properties.iter().find(|p| p.name == "qd").unwrap();
        assert!(!qd.value);
    }

    #[test]
    fn quotient_document_reparses() {
        let dir = tempfile::tempdir().unwrap();
        let mut inv = Invocation::new(Command::Quotient);
        inv.input = Some(doc(&dir, "c3.json", C3));
        inv.kappa = Some("kappa".into());
        let o = run(inv);
        assert_eq!(o.exit_code(), 0, "{}", o.report.to_text());
        let text = o.emitted.unwrap().to_json();
        let s = super::super::document::parse_structure(text.as_bytes()).unwrap();
        assert_eq!(s.carrier().names(), ["[a]", "[c]"]);
        assert!(s.apartness.apart(0, 1));
        assert!(o.report.data.contains_key("document"));
    }

    #[test]
    fn usage_errors() {
        let mut inv = Invocation::new(Command::Check);
        assert_eq!(run_command(&inv).unwrap_err().exit_code(), 2);
        inv.kind = Some("relation".into());
        assert!(matches!(run_command(&inv).unwrap_err(), Error::Usage(_)));
        assert!(Command::parse("frobnicate").is_err());
    }

    #[test]
    fn echo_leaves_out_workers() {
        let mut inv = Invocation::new(Command::Verify);
        inv.workers = 8;
        inv.max_size = Some(2);
        assert_eq!(inv.echo(), "apw verify --max-size 2");
    }

    #[test]
    fn enumerate_without_input() {
        let mut inv = Invocation::new(Command::Enumerate);
        inv.kind = Some("apartness".into());
        inv.max_size = Some(2);
        let o = run(inv);
        assert_eq!(o.report.data["count"], 2);

        let mut inv = Invocation::new(Command::Enumerate);
        inv.kind = Some("relation".into());
        inv.filter = Some("strongly_irreflexive & symmetric & !cotransitive".into());
        inv.max_size = Some(3);
        let o = run(inv);
        assert_eq!(o.report.data["search"]["outcome"], "witness");
    }
}
