use std::sync::OnceLock;

use fibercone::builtins;
use fibercone::pipeline::{scan, ScanReport, Settings};
use fibercone::reportio::{csv_header, from_json, render_svg, to_csv, to_json, Category, PlotStyle};
use num_rational::BigRational;

fn small() -> &'static ScanReport {
    static R: OnceLock<ScanReport> = OnceLock::new();
    R.get_or_init(|| {
        let b = builtins::hironaka1();
        scan(&b.theta, &b.cone, b.height_index, 4, &Settings::default()).unwrap()
    })
}

fn parse_decimal(s: &str) -> BigRational {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().unwrap();
    let scale = exp - frac.len() as i32;
    let ten = num_bigint::BigInt::from(10);
    let mut x = BigRational::from_integer(digits);
    if scale >= 0 {
        x *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        x /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    if neg {
        -x
    } else {
        x
    }
}

#[test]
fn csv_rows_and_numeric_columns() {
    let r = small();
    let bytes = to_csv(r);
    let mut rd = csv::Reader::from_reader(bytes.as_slice());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, csv_header(2, 1));
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), r.len());
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for (row, rep) in rows.iter().zip(r.reports()) {
        assert_eq!(row[col("a")].parse::<i64>().unwrap(), rep.alpha.coords()[0]);
        assert_eq!(row[col("b")].parse::<i64>().unwrap(), rep.alpha.coords()[1]);
        let lo = parse_decimal(&row[col("lambda_lo")]);
        let hi = parse_decimal(&row[col("lambda_hi")]);
        assert!(lo <= rep.poly.lambda.re.lo && rep.poly.lambda.re.hi <= hi);
        let tol = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 18));
        assert!(&hi - &lo < tol);
        let mlo = parse_decimal(&row[col("mahler_lo")]);
        let mhi = parse_decimal(&row[col("mahler_hi")]);
        assert!(mlo <= rep.poly.mahler.lo && rep.poly.mahler.hi <= mhi);
        assert_eq!(row[col("totally_real")].parse::<bool>().unwrap(), rep.poly.totally_real);
        assert_eq!(row[col("real_roots")].parse::<usize>().unwrap(), rep.poly.real_root_count);
        assert_eq!(row[col("descartes")].parse::<usize>().unwrap(), rep.poly.descartes);
        assert_eq!(&row[col("margin")], format!("{}", rep.margin).as_str());
    }
    assert!(!String::from_utf8(bytes).unwrap().contains('\r'));
}

#[test]
fn apex_row_is_totally_real() {
    let b = builtins::hironaka1();
    let r = scan(&b.theta, &b.cone, 1, 2, &Settings::default()).unwrap();
    let text = String::from_utf8(to_csv(&r)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("0,1,2,5,"));
    assert!(lines[1].contains(",true,"));
}

#[test]
fn empty_scan_is_header_only() {
    let b = builtins::hironaka1();
    let r = scan(&b.theta, &b.cone, 1, 1, &Settings::default()).unwrap();
    let text = String::from_utf8(to_csv(&r)).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let r = small();
    let a = to_json(r);
    let back = from_json(&a).unwrap();
    assert_eq!(&back, r);
    assert_eq!(to_json(&back), a);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    let lo = &v["entries"][0]["lambda"]["re"]["lo"];
    assert!(lo["num"].is_string() && lo["den"].is_string());
}

#[test]
fn svg_is_well_formed_with_one_marker_per_class() {
    let r = small();
    let bytes = render_svg(r, &PlotStyle::default()).unwrap();
    let text = String::from_utf8(bytes).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let group = |id: &str| {
        doc.descendants()
            .find(|n| n.attribute("id") == Some(id))
            .unwrap()
    };
    let markers: Vec<_> = group("classes").children().filter(|n| n.is_element()).collect();
    assert_eq!(markers.len(), 7);
    let style = PlotStyle::default();
    let color_count = |c: Category| {
        let col = &style.marker(c).color;
        markers.iter().filter(|m| m.attribute("fill") == Some(col.as_str())).count()
    };
    assert_eq!(color_count(Category::TotallyReal), r.summary.totally_real);
    assert_eq!(color_count(Category::NotTotallyReal), r.summary.not_totally_real);
    assert_eq!(color_count(Category::Error), r.summary.errors);
    let circles = markers.iter().filter(|m| m.tag_name().name() == "circle").count();
    assert_eq!(circles, r.summary.totally_real);

    // boundary rays a = -b and a = b meet the top edge symmetric about a = 0
    let lines: Vec<_> = group("cone").children().filter(|n| n.is_element()).collect();
    assert_eq!(lines.len(), 2);
    let x = |n: &roxmltree::Node, k: &str| n.attribute(k).unwrap().parse::<f64>().unwrap();
    let origin = x(&lines[0], "x1");
    assert!((x(&lines[0], "x2") - origin + (x(&lines[1], "x2") - origin)).abs() < 1e-6);
    assert!((x(&lines[1], "x2") - origin - (x(&lines[0], "y1") - x(&lines[0], "y2"))).abs() < 1e-6);
    assert_eq!(render_svg(r, &style).unwrap(), text.into_bytes());
}

#[test]
fn svg_needs_two_dimensions() {
    let mut r = small().clone();
    let cone = fibercone::conelattice::ConeSpec::new(vec![vec![0, 0, 1]], None, vec![0, 0, 1]).unwrap();
    r.config.cone = cone;
    assert!(render_svg(&r, &PlotStyle::default()).is_err());
}
