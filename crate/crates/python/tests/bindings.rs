use heckecount::heckecount;
use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(heckecount);
    Python::initialize();
    Python::attach(|py| {
        let locals = PyDict::new(py);
        let code = c"
import heckecount as hc
g = hc.WeylGroup('B2')
c = hc.Counter('G2')
result = (g.order, g.degrees(), hc.WeylGroup('A1').character_table().schur(), c.count(3, 7), c.char0(6)['count'])
try:
    hc.Counter('A2').count(4, 2)
    raised = False
except hc.InputError:
    raised = True
";
        py.run(code, None, Some(&locals)).unwrap();
        let result = locals.get_item("result").unwrap().unwrap();
        let (order, degrees, schur, count, char0): (usize, Vec<u64>, std::collections::HashMap<String, String>, usize, usize) =
            result.extract().unwrap();
        assert_eq!((order, degrees), (8, vec![2, 4]));
        assert_eq!(schur["index"], "u+1");
        assert_eq!(schur["sign"], "u^-1+1");
        assert_eq!((count, char0), (5, 5));
        assert!(locals.get_item("raised").unwrap().unwrap().extract::<bool>().unwrap());
    });
}
