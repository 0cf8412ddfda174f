//! Series chains of single bodies and parallel groups. Every series
//! element carries the full load, so elements are solved independently and
//! their deformations add.

use super::body::{material_params, Forcing, KelvinBody, Material};
use super::parallel::{parallel_simulate, ParallelGroup};
use crate::error::{Error, Result};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Single(KelvinBody),
    Parallel(ParallelGroup),
}

impl Element {
    fn as_group(&self) -> ParallelGroup {
        match self {
            Element::Single(b) => ParallelGroup { bodies: vec![*b] },
            Element::Parallel(g) => g.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KelvinNetwork {
    pub elements: Vec<(String, Element)>,
}

impl KelvinNetwork {
    pub fn new(elements: Vec<(String, Element)>) -> Result<Self> {
        let n = KelvinNetwork { elements };
        n.validate()?;
        Ok(n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::invalid("a network needs at least one element"));
        }
        for (_, e) in &self.elements {
            e.as_group().validate()?;
        }
        Ok(())
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|(l, _)| l.as_str()).collect()
    }
}

/// Flow sensor → two parallel actin bodies → nucleus.
pub fn network_i() -> KelvinNetwork {
    let actin = material_params(Material::Actin);
    KelvinNetwork {
        elements: vec![
            ("sensor".into(), Element::Single(material_params(Material::Transmembrane))),
            ("actin".into(), Element::Parallel(ParallelGroup { bodies: vec![actin, actin] })),
            ("nucleus".into(), Element::Single(material_params(Material::Nucleus))),
        ],
    }
}

/// Network I continued through a second actin pair to a substrate
/// attachment.
pub fn network_ii() -> KelvinNetwork {
    let actin = material_params(Material::Actin);
    let mut net = network_i();
    net.elements[1].0 = "actin_apical".into();
    net.elements.push(("actin_basal".into(), Element::Parallel(ParallelGroup { bodies: vec![actin, actin] })));
    net.elements.push(("attachment".into(), Element::Single(material_params(Material::Transmembrane))));
    net
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementRun {
    pub label: String,
    pub u: Vec<f64>,
    /// one series per body; a single body carries the full load
    pub forces: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationResult {
    pub times: Vec<f64>,
    pub elements: Vec<ElementRun>,
    pub total: Vec<f64>,
}

impl DeformationResult {
    pub fn element(&self, label: &str) -> Option<&ElementRun> {
        self.elements.iter().find(|e| e.label == label)
    }
}

pub fn network_deform(
    net: &KelvinNetwork,
    f: &Forcing,
    t_end: f64,
    h: f64,
    sample_every: usize,
) -> Result<DeformationResult> {
    net.validate()?;
    let runs = net
        .elements
        .par_iter()
        .map(|(label, e)| {
            let r = parallel_simulate(&e.as_group(), f, t_end, h, sample_every)?;
            Ok((r.times, ElementRun { label: label.clone(), u: r.u, forces: r.forces }))
        })
        .collect::<Result<Vec<_>>>()?;
    let times = runs[0].0.clone();
    let elements: Vec<ElementRun> = runs.into_iter().map(|(_, e)| e).collect();
    let total = (0..times.len()).map(|k| elements.iter().map(|e| e.u[k]).sum()).collect();
    Ok(DeformationResult { times, elements, total })
}

/// Bodies in series, labelled `body1`, `body2`, …
pub fn series_deform(
    bodies: &[KelvinBody],
    f: &Forcing,
    t_end: f64,
    h: f64,
    sample_every: usize,
) -> Result<DeformationResult> {
    let net = KelvinNetwork::new(
        bodies.iter().enumerate().map(|(i, b)| (format!("body{}", i + 1), Element::Single(*b))).collect(),
    )?;
    network_deform(&net, f, t_end, h, sample_every)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::body::single_body_deform;

    #[test]
    fn one_body_series_is_single() {
        let b = material_params(Material::Actin);
        let f = Forcing::oscillatory_hz(1.0, 0.2);
        let s = series_deform(&[b], &f, 30.0, 0.1, 3).unwrap();
        let d = single_body_deform(&b, &f, 30.0, 0.1, 3).unwrap();
        assert_eq!(s.times, d.times);
        for (p, q) in s.total.iter().zip(d.component(0)) {
            assert!((p - q).abs() < 1e-15);
        }
    }

    #[test]
    fn identical_series_doubles() {
        let b = material_params(Material::Nucleus);
        let f = Forcing::Steady { f0: 1.0 };
        let one = series_deform(&[b], &f, 100.0, 0.1, 10).unwrap();
        let two = series_deform(&[b, b], &f, 100.0, 0.1, 10).unwrap();
        for (p, q) in two.total.iter().zip(&one.total) {
            assert!((p - 2.0 * q).abs() < 1e-15);
        }
    }

    #[test]
    fn actin_plus_nucleus_steady() {
        let bs = [material_params(Material::Actin), material_params(Material::Nucleus)];
        let r = series_deform(&bs, &Forcing::Steady { f0: 1.0 }, 5000.0, 0.1, 1000).unwrap();
        assert!((r.total.last().unwrap() - 0.025).abs() < 1e-9);
    }

    #[test]
    fn network_i_forces_and_ordering() {
        let r = network_deform(&network_i(), &Forcing::Steady { f0: 1.0 }, 600.0, 0.1, 10).unwrap();
        let actin = r.element("actin").unwrap();
        assert!(actin.forces.iter().flatten().all(|f| (f - 0.5).abs() < 1e-9));
        assert!(r.element("sensor").unwrap().forces[0].iter().all(|f| *f == 1.0));
        let nuc = &r.element("nucleus").unwrap().u;
        for (k, t) in r.times.iter().enumerate() {
            if *t > 1.0 {
                assert!(nuc[k] < actin.u[k] && nuc[k] < r.element("sensor").unwrap().u[k]);
            }
            let sum: f64 = r.elements.iter().map(|e| e.u[k]).sum();
            assert!((sum - r.total[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn network_ii_shape() {
        let n = network_ii();
        assert_eq!(n.labels(), ["sensor", "actin_apical", "nucleus", "actin_basal", "attachment"]);
        let bodies: usize = n.elements.iter().map(|(_, e)| e.as_group().len()).sum();
        assert_eq!(bodies, 7);
        assert!(KelvinNetwork::new(vec![]).is_err());
    }
}
