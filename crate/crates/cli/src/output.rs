//! Profile serialization. Floats are written with 17 significant digits so
//! identical runs give identical bytes.

use adsmd::radial_exact::{ChannelSpec, RadialProfile};
use adsmd::spectrum::{ser_f64, sig17};
use serde::Serialize;

use crate::CliError;

pub const CSV_HEADER: [&str; 7] = ["var", "grid", "re1", "im1", "re2", "im2", "system_tag"];

pub fn profile_csv(p: &RadialProfile) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError { code: 2, message: format!("csv: {e}") };
    w.write_record(CSV_HEADER).map_err(fail)?;
    for i in 0..p.len() {
        let (a, b) = (p.comp1[i], p.comp2[i]);
        w.write_record([
            p.variable.name().to_string(),
            sig17(p.grid[i]),
            sig17(a.re),
            sig17(a.im),
            sig17(b.re),
            sig17(b.im),
            p.system_tag.name().to_string(),
        ])
        .map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { code: 2, message: format!("csv: {e}") })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct Point {
    #[serde(serialize_with = "ser_f64")]
    grid: f64,
    #[serde(serialize_with = "ser_f64")]
    re1: f64,
    #[serde(serialize_with = "ser_f64")]
    im1: f64,
    #[serde(serialize_with = "ser_f64")]
    re2: f64,
    #[serde(serialize_with = "ser_f64")]
    im2: f64,
}

#[derive(Serialize)]
struct ProfileDoc<'a> {
    channel: &'a ChannelSpec,
    n: u32,
    #[serde(serialize_with = "ser_f64")]
    epsilon: f64,
    var: &'static str,
    system_tag: &'static str,
    points: Vec<Point>,
}

pub fn profile_json(ch: &ChannelSpec, n: u32, p: &RadialProfile) -> String {
    let doc = ProfileDoc {
        channel: ch,
        n,
        epsilon: p.energy(),
        var: p.variable.name(),
        system_tag: p.system_tag.name(),
        points: (0..p.len())
            .map(|i| Point {
                grid: p.grid[i],
                re1: p.comp1[i].re,
                im1: p.comp1[i].im,
                re2: p.comp2[i].re,
                im2: p.comp2[i].im,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("profiles serialize");
    s.push('\n');
    s
}
