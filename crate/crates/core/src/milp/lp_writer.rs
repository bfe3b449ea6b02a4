use std::fmt::Write as _;

use super::MilpModel;

const TERMS_PER_LINE: usize = 8;

/// Decimal text for LP coefficients; integers without a fraction, very small
/// or very large magnitudes in exponent form. Round-trips through `f64`.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == x.trunc() && a < 1e15 {
        format!("{}", x as i64)
    } else if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn push_term(line: &mut String, count: &mut usize, coefficient: f64, name: &str) {
    if *count > 0 && *count % TERMS_PER_LINE == 0 {
        line.push_str("\n   ");
    }
    let sign = if coefficient < 0.0 { "-" } else { "+" };
    let magnitude = coefficient.abs();
    if *count == 0 && sign == "+" {
        // leading plus is implicit
    } else if *count == 0 {
        line.push_str("- ");
    } else {
        line.push(' ');
        line.push_str(sign);
        line.push(' ');
    }
    if magnitude != 1.0 {
        line.push_str(&format_number(magnitude));
        line.push(' ');
    }
    line.push_str(name);
    *count += 1;
}

/// Serializes the model in LP file syntax. Output depends only on the model.
///
/// Capacity rows with neither variable terms nor pinned load reduce to
/// `theta >= 0` and are not written.
pub fn write_lp_file(model: &MilpModel) -> String {
    let names: Vec<String> = model.vars.iter().map(|v| v.name()).collect();
    let mut out = String::new();
    writeln!(
        out,
        "\\ 2SR model: {} demands, {} pinned, {} binaries",
        model.demand_count,
        model.pinned.len(),
        names.len()
    )
    .unwrap();
    out.push_str("Minimize\n obj: theta\nSubject To\n");
    for row in &model.assignment_rows {
        let mut line = format!(" a{}: ", row.demand);
        let mut count = 0;
        for v in row.vars.clone() {
            push_term(&mut line, &mut count, 1.0, &names[v]);
        }
        line.push_str(" = 1\n");
        out.push_str(&line);
    }
    for row in &model.capacity_rows {
        if row.terms.is_empty() && row.pinned_load == 0.0 {
            continue;
        }
        let mut line = format!(" c{}: ", row.arc);
        let mut count = 0;
        for &(v, coefficient) in &row.terms {
            push_term(&mut line, &mut count, coefficient, &names[v]);
        }
        push_term(&mut line, &mut count, -row.capacity, "theta");
        if row.pinned_load == 0.0 {
            line.push_str(" <= 0\n");
        } else {
            writeln!(line, " <= -{}", format_number(row.pinned_load)).unwrap();
        }
        out.push_str(&line);
    }
    out.push_str("Bounds\n theta >= 0\n");
    if !names.is_empty() {
        out.push_str("Binary\n");
        for name in &names {
            writeln!(out, " {name}").unwrap();
        }
    }
    out.push_str("End\n");
    out
}

/// Start solution for the solver: `theta` at the start assignment's
/// utilization, then `name value` for every binary.
pub fn write_start_file(model: &MilpModel) -> String {
    let assignment = model.start_assignment();
    let theta = model.utilization_of(&assignment).expect("start assignment uses model variables");
    let mut out = format!("theta {theta:e}\n");
    for var in &model.vars {
        let value = u8::from(assignment[var.demand] == var.candidate);
        writeln!(out, "{} {value}", var.name()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{demand_pinning_filter, full_candidates};
    use crate::fixtures;
    use crate::igp::{compute_apsp, compute_ecmp_fractions, EcmpTable};
    use crate::milp::build_model;
    use crate::net_model::{Topology, TrafficMatrix};

    fn lp(topo: &Topology, tm: &TrafficMatrix, alpha_dp: f64) -> String {
        let ecmp: EcmpTable<f64> = compute_ecmp_fractions(topo, &compute_apsp(topo).unwrap());
        let cands = demand_pinning_filter(&full_candidates(topo, tm), tm, alpha_dp).unwrap();
        write_lp_file(&build_model(topo, tm, &cands, &ecmp).unwrap())
    }

    #[test]
    fn diamond_assignment_row() {
        let t = fixtures::diamond(1.0);
        let tm = TrafficMatrix::from_triples(&[(0, 3, 1.0)]).unwrap();
        let text = lp(&t, &tm, 0.0);
        assert!(text.contains("\n a0: x_d0_mdir + x_d0_m1 + x_d0_m2 = 1\n"), "{text}");
        assert!(text.contains("\n c0: 0.5 x_d0_mdir + x_d0_m1 - theta <= 0\n"), "{text}");
        assert!(text.contains("Binary\n x_d0_mdir\n x_d0_m1\n x_d0_m2\nEnd\n"));
    }

    #[test]
    fn start_file_is_shortest_path_routing() {
        let t = fixtures::diamond(1.0);
        let tm = TrafficMatrix::from_triples(&[(0, 3, 1.0), (1, 2, 2.0)]).unwrap();
        let ecmp: EcmpTable<f64> = compute_ecmp_fractions(&t, &compute_apsp(&t).unwrap());
        let model = build_model(&t, &tm, &full_candidates(&t, &tm), &ecmp).unwrap();
        let text = write_start_file(&model);
        let mut lines = text.lines().map(|l| l.split_once(' ').unwrap());
        let (name, theta) = lines.next().unwrap();
        assert_eq!(name, "theta");
        assert_eq!(theta.parse::<f64>().unwrap(), crate::igp::spr_mlu(&t, &tm, &ecmp).mlu);
        let ones: Vec<&str> = lines.filter(|(_, v)| *v == "1").map(|(n, _)| n).collect();
        assert_eq!(ones, ["x_d0_mdir", "x_d1_mdir"]);
        assert_eq!(text.lines().count(), 1 + model.binary_count());
    }

    #[test]
    fn empty_traffic() {
        let t = fixtures::diamond(1.0);
        let text = lp(&t, &TrafficMatrix::default(), 0.0);
        assert_eq!(
            text,
            "\\ 2SR model: 0 demands, 0 pinned, 0 binaries\nMinimize\n obj: theta\nSubject To\nBounds\n theta >= 0\nEnd\n"
        );
    }

    #[test]
    fn pinned_constant_moves_right() {
        let t = fixtures::diamond(10.0);
        let tm = TrafficMatrix::from_triples(&[(0, 3, 1.0), (1, 2, 4.0)]).unwrap();
        let text = lp(&t, &tm, 0.2);
        // demand 0 pinned: 0.5 on arc 0->1 (c0)
        assert!(text.contains("\n c0: - 10 theta <= -0.5\n"), "{text}");
        assert!(!text.contains("x_d0"));
    }

    #[test]
    fn deterministic_output() {
        let t = fixtures::triangle_with_stub(3.0);
        let tm = TrafficMatrix::from_triples(&[(0, 1, 1.5), (3, 0, 2.5), (1, 3, 0.25)]).unwrap();
        assert_eq!(lp(&t, &tm, 0.0), lp(&t, &tm, 0.0));
    }

    #[test]
    fn long_rows_wrap() {
        let t = crate::net_model::synth::random_backbone(12, 2.0, 4).unwrap();
        let tm = crate::net_model::generate_gravity_traffic(&t, 100.0, 1).unwrap();
        let text = lp(&t, &tm, 0.0);
        assert!(text.lines().all(|l| l.len() < 400));
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(1000.0), "1000");
        assert_eq!(format_number(0.125), "0.125");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        for x in [0.1 + 0.2, 1.0 / 3.0, 123456.789, 3e-9, 7.25e20] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
    }
}
