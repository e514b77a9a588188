use geolink::genus::*;

fn main() {
    for g in 2..=10u32 {
        let gp = GenusParams::new(g).unwrap();
        for interp in [Interpretation::A, Interpretation::B] {
            let stated = cone_negativity_report(gp, interp);
            let alt = cone_negativity_report_alternate(gp, interp);
            println!(
                "g={g} interp={interp:?} stated: all_neg={} max={} argmax={:?} | alternate: all_neg={} max={} argmax={:?}",
                stated.all_negative,
                geolink::exact::rat_to_string(&stated.max_value),
                stated.argmax,
                alt.all_negative,
                geolink::exact::rat_to_string(&alt.max_value),
                alt.argmax,
            );
        }
    }
}
