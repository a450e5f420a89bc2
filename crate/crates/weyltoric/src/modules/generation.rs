//! Generation checks: closure of a vector under the action generators, and
//! explicit single-operator certificates carrying each target monomial back
//! to the generator.

use std::collections::BTreeMap;

use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::linalg::RowSpace;
use crate::rat::{self, int, Coeff};
use crate::rings::RingSpec;
use crate::support::{ModuleVector, SupportKind};
use crate::weyl::WeylElement;

use super::WeightModule;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GenerationStrategy {
    Closure,
    Certificates,
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub target: Vec<i64>,
    pub operator: String,
    pub member: bool,
    /// The exact rational with `D(generator) = constant * target`.
    pub constant: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureOutcome {
    pub covered: bool,
    /// Per trusted weight: `(weight, reached dimension, full dimension)`.
    pub per_weight: Vec<(i64, usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub generator: Vec<i64>,
    pub strategy: GenerationStrategy,
    pub certificate_kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertificateRecord>>,
    pub pass: bool,
}

/// Checks that the module is generated by the given monomial, over the
/// trusted window.
pub fn check_generation(
    m: &WeightModule,
    generator: &MultiIndex,
    strategy: GenerationStrategy,
) -> Result<GenerationReport> {
    if !m.support().contains(generator) {
        return Err(Error::NotInModule(generator.to_string()));
    }
    let gen_weight = m.support().weight_of(generator);
    if gen_weight < m.window().0 || gen_weight > m.window().1 {
        return Err(Error::NotInModule(format!(
            "{generator} has weight {gen_weight} outside the window"
        )));
    }

    let closure = match strategy {
        GenerationStrategy::Closure | GenerationStrategy::Both => Some(run_closure(m, generator)),
        GenerationStrategy::Certificates => None,
    };
    let (certificate_kind, certificates) = match strategy {
        GenerationStrategy::Certificates | GenerationStrategy::Both => {
            let (kind, certs) = run_certificates(m, generator);
            (kind, Some(certs))
        }
        GenerationStrategy::Closure => ("none".to_string(), None),
    };

    let pass = closure.as_ref().is_none_or(|c| c.covered)
        && certificates
            .as_ref()
            .is_none_or(|certs| certs.iter().all(|c| c.ok));

    Ok(GenerationReport {
        generator: generator.entries().to_vec(),
        strategy,
        certificate_kind,
        closure,
        certificates,
        pass,
    })
}

fn vector_map(v: &ModuleVector) -> BTreeMap<MultiIndex, Coeff> {
    v.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Iteratively applies every action generator to the span of the start
/// vector until stable within the window, then compares dimensions on the
/// trusted weights.
fn run_closure(m: &WeightModule, generator: &MultiIndex) -> ClosureOutcome {
    let mut spans: BTreeMap<i64, RowSpace<MultiIndex>> = BTreeMap::new();
    let start = ModuleVector::monomial(generator.clone());
    let start_weight = m.support().weight_of(generator);
    spans.entry(start_weight).or_default().insert(vector_map(&start));
    let mut queue = vec![start];
    let symbols = m.action_symbols();
    while let Some(v) = queue.pop() {
        for &sym in &symbols {
            let image = m.apply_symbol(sym, &v);
            if image.is_zero() {
                continue;
            }
            let w = m
                .vector_weight(&image)
                .expect("generator images are weight-homogeneous");
            if spans.entry(w).or_default().insert(vector_map(&image)) {
                queue.push(image);
            }
        }
    }
    let mut per_weight = Vec::new();
    let mut covered = true;
    for w in m.trusted_weights() {
        let full = m.dim(w);
        let reached = spans.get(&w).map_or(0, RowSpace::rank);
        if reached != full {
            covered = false;
        }
        per_weight.push((w, reached, full));
    }
    ClosureOutcome {
        covered,
        per_weight,
    }
}

/// Ring the certificates must live in.
fn certificate_ring(m: &WeightModule) -> RingSpec {
    match m.kind() {
        SupportKind::H0ResX | SupportKind::HtopResX => {
            RingSpec::resolution_x(m.rank(), m.twist())
        }
        SupportKind::H0Y | SupportKind::HtopY => {
            RingSpec::weighted_y(m.rank(), m.twist()).expect("even twist enforced at build")
        }
        _ => unreachable!("weight modules only exist on graded supports"),
    }
}

/// The generator monomial each certificate family is built for.
pub fn expected_generator(m: &WeightModule) -> Option<MultiIndex> {
    let n = m.rank();
    let ell = m.twist();
    let mut mu = vec![0i64; n + 1];
    match m.kind() {
        SupportKind::H0ResX if ell >= 1 => {
            mu[n - 1] = ell;
        }
        SupportKind::H0ResX if ell % 2 == 0 => {
            mu[n] = -ell / 2;
        }
        SupportKind::H0ResX => {
            mu[n - 1] = 1;
            mu[n] = -(ell - 1) / 2;
        }
        SupportKind::HtopResX => {
            mu[0] = ell + n as i64 - 1;
            for e in mu.iter_mut().take(n).skip(1) {
                *e = -1;
            }
        }
        SupportKind::H0Y => {
            mu[n] = ell / 2;
        }
        SupportKind::HtopY => {
            mu[0] = ell + n as i64 + 1;
            for e in mu.iter_mut().take(n).skip(1) {
                *e = -1;
            }
            mu[n] = -1;
        }
        _ => return None,
    }
    Some(MultiIndex::new(mu))
}

fn run_certificates(m: &WeightModule, generator: &MultiIndex) -> (String, Vec<CertificateRecord>) {
    let ring = certificate_ring(m);
    let matches_family = expected_generator(m).as_ref() == Some(generator);
    let kind = if matches_family {
        match (m.kind(), m.twist() >= 1, m.twist().rem_euclid(2) == 0) {
            (SupportKind::H0ResX, true, _) => "sections-positive",
            (SupportKind::H0ResX, false, true) => "sections-even",
            (SupportKind::H0ResX, false, false) => "sections-odd",
            (SupportKind::HtopResX, _, _) => "top-cohomology",
            (SupportKind::H0Y, _, _) => "weighted-sections",
            (SupportKind::HtopY, _, _) => "generic",
            _ => "generic",
        }
    } else {
        "generic"
    };

    let mut records = Vec::new();
    let gen_vec = ModuleVector::monomial(generator.clone());
    for w in m.trusted_weights() {
        for target in m.basis(w) {
            let op = if matches_family {
                family_certificate(m, target)
            } else {
                generic_certificate(m, generator, target)
            };
            let record = match op {
                Some(op) => {
                    let member = ring.is_member(&op).unwrap_or(false);
                    let image = m.apply_op(&op, &gen_vec);
                    let constant = match image.as_monomial() {
                        Some((mono, c)) if mono == target => c.clone(),
                        _ if image.is_zero() => int(0),
                        _ => int(0),
                    };
                    let ok = member && !constant.is_zero();
                    CertificateRecord {
                        target: target.entries().to_vec(),
                        operator: op.to_string(),
                        member,
                        constant: rat::coeff_string(&constant),
                        ok,
                    }
                }
                None => CertificateRecord {
                    target: target.entries().to_vec(),
                    operator: String::new(),
                    member: false,
                    constant: "0".to_string(),
                    ok: false,
                },
            };
            records.push(record);
        }
    }
    (kind.to_string(), records)
}

/// The displayed operators from the structure theorems, one per module
/// family. Each is a single normal-ordered term sending the family's
/// generator to a rational multiple of the target (the multiple is `1` for
/// the section families and is recorded in the report for the rest).
fn family_certificate(m: &WeightModule, target: &MultiIndex) -> Option<WeylElement> {
    let n = m.rank();
    let ell = m.twist();
    let vars = n + 1;
    match m.kind() {
        SupportKind::H0ResX if ell >= 1 => {
            // Q^target P_n^ell / ell!
            let mut nu = vec![0i64; vars];
            nu[n - 1] = ell;
            let c = int(1) / Coeff::from_integer(rat::factorial(ell as u64));
            WeylElement::term(n, false, c, target.entries().to_vec(), nu).ok()
        }
        SupportKind::H0ResX if ell % 2 == 0 => {
            // Q^target P_last^(-ell/2) / (-ell/2)!
            let k = (-ell / 2) as u64;
            let mut nu = vec![0i64; vars];
            nu[n] = k as i64;
            let c = int(1) / Coeff::from_integer(rat::factorial(k));
            WeylElement::term(n, false, c, target.entries().to_vec(), nu).ok()
        }
        SupportKind::H0ResX => {
            // Q^target P_n P_last^(-(ell-1)/2) / (-(ell-1)/2)!
            let k = (-(ell - 1) / 2) as u64;
            let mut nu = vec![0i64; vars];
            nu[n - 1] = 1;
            nu[n] = k as i64;
            let c = int(1) / Coeff::from_integer(rat::factorial(k));
            WeylElement::term(n, false, c, target.entries().to_vec(), nu).ok()
        }
        SupportKind::HtopResX => hres_certificate(n, ell, target),
        SupportKind::H0Y => {
            // Q'^target' Q_last^(target_last) P_last^(ell/2) / (ell/2)!
            let k = (ell / 2) as u64;
            let mut nu = vec![0i64; vars];
            nu[n] = k as i64;
            let c = int(1) / Coeff::from_integer(rat::factorial(k));
            WeylElement::term(n, false, c, target.entries().to_vec(), nu).ok()
        }
        SupportKind::HtopY => {
            let gen = expected_generator(m)?;
            generic_certificate(m, &gen, target)
        }
        _ => None,
    }
}

/// The displayed operator of the top-cohomology structure theorem:
///
/// ```text
/// D = (-1)^(sum mu' + n)
///     / ( prod_{i=0}^{-mu_1} (ell + n - 1 - i) * prod_{j=2}^{n} (-(mu_j + 1))! )
///     * Q_1^(-ell-n) Q_last^(mu_last) P_1^(-mu_1-1) ... P_n^(-(mu_n+1))
/// ```
///
/// Applied to `Q_1^(ell+n-1) Q_2^-1 ... Q_n^-1` it returns the target up to
/// the rational constant `(-1)^(mu_1+1) / ((ell+n+mu_1)(ell+n+mu_1-1))`,
/// which is nonzero whenever the target is in the module.
fn hres_certificate(n: usize, ell: i64, target: &MultiIndex) -> Option<WeylElement> {
    let vars = n + 1;
    let mu1 = target.get(0);
    let head_sum = target.head_sum();
    let sign = if (head_sum + n as i64).rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    };
    let mut denom = num::BigInt::from(1);
    for i in 0..=(-mu1) {
        denom *= num::BigInt::from(ell + n as i64 - 1 - i);
    }
    for j in 1..n {
        denom *= rat::factorial((-(target.get(j) + 1)) as u64);
    }
    if denom.is_zero() {
        return None;
    }
    let c = sign / Coeff::from_integer(denom);
    let mut mu = vec![0i64; vars];
    mu[0] = -ell - n as i64;
    mu[n] = target.last();
    let mut nu = vec![0i64; vars];
    for (v, e) in nu[..n].iter_mut().zip(target.entries()) {
        *v = -(e + 1);
    }
    nu[0] = -mu1 - 1;
    WeylElement::term(n, false, c, mu, nu).ok()
}

/// Difference-of-exponents certificate `Q^max(t-g,0) P^max(g-t,0)`, valid on
/// any of the module supports: the falling factorials it picks up never
/// vanish on the generator.
fn generic_certificate(
    m: &WeightModule,
    generator: &MultiIndex,
    target: &MultiIndex,
) -> Option<WeylElement> {
    let vars = m.rank() + 1;
    let mut mu = vec![0i64; vars];
    let mut nu = vec![0i64; vars];
    for i in 0..vars {
        let d = target.get(i) - generator.get(i);
        if d >= 0 {
            mu[i] = d;
        } else {
            nu[i] = -d;
        }
    }
    WeylElement::term(m.rank(), false, int(1), mu, nu).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::build_module;

    #[test]
    fn positive_twist_certificate_example() {
        // twist 2, rank 2, generator Q_2^2: the certificate for the
        // covariant Q_1^2 Q_2^2 Q_3 is Q_1^2 Q_2^2 Q_3 P_2^2 / 2, a ring
        // member carrying Q_2^2 there
        let m = build_module(SupportKind::H0ResX, 2, 2, Some((-3, 0))).unwrap();
        let generator = MultiIndex::new(vec![0, 2, 0]);
        let rep = check_generation(&m, &generator, GenerationStrategy::Both).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.certificate_kind, "sections-positive");
        let cert = rep
            .certificates
            .as_ref()
            .unwrap()
            .iter()
            .find(|c| c.target == vec![2, 2, 1])
            .unwrap();
        assert!(cert.member);
        assert_eq!(cert.constant, "1");
        assert!(cert.operator.contains("1/2 * Q^[2,2,1] P^[0,2,0]"));
    }

    #[test]
    fn negative_twist_certificates_are_exact() {
        for ell in [0i64, -1, -2, -3] {
            let m = build_module(SupportKind::H0ResX, 2, ell, None).unwrap();
            let generator = expected_generator(&m).unwrap();
            let rep =
                check_generation(&m, &generator, GenerationStrategy::Certificates).unwrap();
            assert!(rep.pass, "ell={ell}: {rep:?}");
            for c in rep.certificates.as_ref().unwrap() {
                assert_eq!(c.constant, "1", "ell={ell} target {:?}", c.target);
            }
        }
    }

    #[test]
    fn closure_generates_from_the_top() {
        let m = build_module(SupportKind::H0ResX, 2, 1, Some((-4, 0))).unwrap();
        let generator = MultiIndex::new(vec![0, 1, 0]);
        let rep = check_generation(&m, &generator, GenerationStrategy::Closure).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn hres_certificate_records_the_constant() {
        // rank 2, twist -3: target Q_1^-2 Q_2^-1 is the generator itself;
        // the displayed operator returns it scaled by -1/12
        let m = build_module(SupportKind::HtopResX, 2, -3, None).unwrap();
        let generator = expected_generator(&m).unwrap();
        assert_eq!(generator.entries(), &[-2, -1, 0]);
        let rep = check_generation(&m, &generator, GenerationStrategy::Both).unwrap();
        assert!(rep.pass, "{rep:?}");
        let cert = rep
            .certificates
            .as_ref()
            .unwrap()
            .iter()
            .find(|c| c.target == vec![-2, -1, 0])
            .unwrap();
        assert!(cert.member);
        assert_eq!(cert.constant, "-1/12");
    }

    #[test]
    fn weighted_sections_generated_by_the_pure_last_power() {
        let m = build_module(SupportKind::H0Y, 2, 4, None).unwrap();
        let generator = expected_generator(&m).unwrap();
        assert_eq!(generator.entries(), &[0, 0, 2]);
        let rep = check_generation(&m, &generator, GenerationStrategy::Both).unwrap();
        assert!(rep.pass, "{rep:?}");
        for c in rep.certificates.as_ref().unwrap() {
            assert_eq!(c.constant, "1");
        }
    }

    #[test]
    fn dimension_one_module_generates_itself() {
        let m = build_module(SupportKind::HtopY, 2, -4, None).unwrap();
        let generator = expected_generator(&m).unwrap();
        let rep = check_generation(&m, &generator, GenerationStrategy::Both).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn vector_outside_the_module_is_an_error() {
        let m = build_module(SupportKind::H0ResX, 2, 2, None).unwrap();
        let bad = MultiIndex::new(vec![1, 0, 0]);
        assert!(check_generation(&m, &bad, GenerationStrategy::Closure).is_err());
    }
}
