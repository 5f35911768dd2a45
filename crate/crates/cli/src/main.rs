use std::io;

fn main() {
    let code = dvschur::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
