mod common;

use std::fs;

use common::{example1, fixture, fixture_path};
use figcode::format::{parse_code, parse_pcp, parse_witness, serialize_code, serialize_pcp, serialize_witness};
use figcode::pcp::witness_from_solution;
use figcode::render::{ascii, ascii_witness, svg, svg_gallery, svg_witness};
use figcode::{check, Error, Kind, MergeTable, Mode, Options, Witness};

#[test]
fn example_figure_round_trips() {
    let c = fixture("example1.fig");
    let f = &c.figures()[0];
    assert_eq!(f, &example1());
    let again = parse_code(&serialize_code(&c)).unwrap();
    assert_eq!(again, c);
    assert_eq!(serialize_code(&again), serialize_code(&c));
}

#[test]
fn every_fixture_round_trips() {
    for e in fs::read_dir(fixture_path("")).unwrap() {
        let path = e.unwrap().path();
        if path.extension().is_some_and(|x| x == "fig") {
            let c = parse_code(&fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(parse_code(&serialize_code(&c)).unwrap(), c, "{}", path.display());
        }
    }
}

#[test]
fn projection_table_is_read() {
    let c = fixture("example2.fig");
    assert_eq!(c.merge(), Some(&MergeTable::first(3)));
}

#[test]
fn empty_figure_is_rejected_with_its_line() {
    let text = "alphabet a\nfigure f\nbegin 0 0\nend 1 0\ncell 0 0 a\nfigure g\nbegin 0 0\nend 0 0\n";
    match parse_code(text) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_lines_report_position() {
    let cases = [
        ("figure f\n", 1),
        ("alphabet a\nalphabet b\n", 2),
        ("alphabet a\nfigure f\nbegin 0\n", 3),
        ("alphabet a\nfigure f\nbegin 0 x\n", 3),
        ("alphabet a\nfigure f\nbegin 0 0\nend 1 0\ncell 0 0 a\nwobble\n", 6),
        ("alphabet a\nfigure f\nbegin 0 0\nend 1 0\ncell 0 0 a\nmerge a a -> b\n", 6),
    ];
    for (text, want) in cases {
        match parse_code(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn pcp_round_trips() {
    let text = fs::read_to_string(fixture_path("pcp_example.pcp")).unwrap();
    let inst = parse_pcp(&text).unwrap();
    assert_eq!(inst.k(), 3);
    assert_eq!(inst.word_string(&inst.pairs()[1].1), "aba");
    assert_eq!(parse_pcp(&serialize_pcp(&inst)).unwrap(), inst);
    assert!(parse_pcp("alphabet a b\npairs 2\na b\n").is_err());
    assert!(parse_pcp("alphabet a b\npairs 1\na a\n").is_err());
}

#[test]
fn witness_round_trips() {
    let c = fixture("zcode.fig");
    let r = check(&c, Kind::Msd, Mode::Plain, &Options::default()).unwrap();
    let w = r.verdict.witness().unwrap();
    let text = serialize_witness(w, &c, Mode::Plain);
    let (mode, left, right) = parse_witness(&text, &c).unwrap();
    assert_eq!((mode, &left, &right), (Mode::Plain, &w.left, &w.right));
    assert!(parse_witness(&text.replace("z1", "q9"), &c).is_err());

    let inst = parse_pcp(&fs::read_to_string(fixture_path("pcp_example.pcp")).unwrap()).unwrap();
    let (code, w) = witness_from_solution(&inst, &[1, 2, 3]).unwrap();
    let back = parse_code(&serialize_code(&code)).unwrap();
    let (_, l, r) = parse_witness(&serialize_witness(&w, &code, Mode::Plain), &back).unwrap();
    let again = Witness::from_sequences(&back.normalized(), l, r, Mode::Plain, None).unwrap();
    assert_eq!(again.result, w.result);
}

#[test]
fn ascii_pictures() {
    let c = fixture("example1.fig");
    assert_eq!(ascii(&c.figures()[0], c.alphabet()), "o.   a   .<>\n a   b   a\n");
    let z = fixture("zcode.fig");
    assert_eq!(ascii(&z.figures()[1], z.alphabet()), "oa   b   .<>\n");
}

#[test]
fn ascii_witness_lists_owners() {
    let c = fixture("zcode.fig");
    let figs = c.normalized();
    let w = Witness::from_sequences(&figs, vec![0, 2], vec![1, 0], Mode::Plain, None).unwrap();
    let s = ascii_witness(&w, &figs, c.names(), c.alphabet());
    assert_eq!(s, "left: z1 z3\nright: z2 z1\n\noa   b   a   .<>\n\nleft factors:\n1 2 2 .\n\nright factors:\n1 1 2 .\n");
}

#[test]
fn svg_pictures() {
    let c = fixture("example2.fig");
    let s = svg(&c.figures()[0], c.alphabet());
    assert!(s.starts_with("<svg"));
    assert_eq!(s.matches("<rect x=").count(), 3);
    let g = svg_gallery(&[("u", &c.figures()[0]), ("v", &c.figures()[1])], c.alphabet());
    assert_eq!(g.matches("<rect x=").count(), 6);
    assert!(g.contains(">u</text>") && g.contains(">v</text>"));

    let z = fixture("zcode.fig");
    let figs = z.normalized();
    let w = Witness::from_sequences(&figs, vec![0, 2], vec![1, 0], Mode::Plain, None).unwrap();
    let s = svg_witness(&w, &figs, z.alphabet(), Mode::Plain, None).unwrap();
    assert_eq!(s.matches("<rect x=").count(), 6);
    let bogus = Witness::new(vec![0], vec![1], figs[0].clone());
    assert!(svg_witness(&bogus, &figs, z.alphabet(), Mode::Plain, None).is_err());
}
