use serde_json::{json, Value};

use hecke_metro::chains::{stationary, tv_distance};
use hecke_metro::coxeter::GroupFamily;
use hecke_metro::error::Error;
use hecke_metro::sampler::{empirical_distribution, length_moments, mallows_samples};

use crate::config::{enumerate, CliError, CliResult, SampleArgs};
use crate::output::Report;
use crate::row;

pub const COLUMNS: [&str; 3] = ["index", "element", "length"];

pub fn run(args: &SampleArgs) -> CliResult<bool> {
    let family = args.instance.family()?;
    let theta = args.instance.theta_float()?;
    let samples = mallows_samples(family, theta, args.samples, args.seed)?;

    let mut report = Report::new(serde_json::to_value(args).expect("config serializes"), COLUMNS.to_vec());
    report.cite("sampler", "exact sequential draws from one seeded ChaCha8 stream");
    report.cite("predicted_length_moments", "closed form in the degrees of the group");

    let lengths: Vec<f64> = samples.iter().map(|w| w.length() as f64).collect();
    let count = lengths.len().max(1) as f64;
    let mean = lengths.iter().sum::<f64>() / count;
    let variance = lengths.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / count;
    let predicted = length_moments(family, &theta)?;

    let empirical_tv = match enumerate(family) {
        Ok(group) => {
            let empirical = empirical_distribution(&group, &samples)?;
            Value::from(tv_distance(&empirical, &stationary(&group, &theta)?)?)
        }
        Err(CliError::Library(Error::CapExceeded { .. })) => Value::Null,
        Err(e) => return Err(e),
    };

    let mut summary = json!({
        "samples": samples.len(),
        "empirical_tv": empirical_tv,
        "length_mean": { "empirical": mean, "predicted": predicted.mean },
        "length_variance": { "empirical": variance, "predicted": predicted.variance },
    });
    if let GroupFamily::Hypercube(n) = family {
        let mut ones = vec![0usize; n];
        for w in &samples {
            for (k, bit) in w.as_bits().expect("hypercube element").iter().enumerate() {
                ones[k] += usize::from(*bit);
            }
        }
        summary["coordinate_means"] = json!(ones.iter().map(|&c| c as f64 / count).collect::<Vec<f64>>());
        summary["coordinate_mean_predicted"] = json!(1.0 / (1.0 + theta));
    }
    report.summary = Some(summary);

    for (index, w) in samples.iter().enumerate() {
        report.push(row! { "index" => index, "element" => w.to_string(), "length" => w.length() });
    }
    report.write(&args.output)?;
    Ok(true)
}
