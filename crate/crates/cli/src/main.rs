fn main() {
    let out = syzex_cli::run(std::env::args_os());
    if out.code == 0 {
        print!("{}", out.output);
    } else {
        eprint!("{}", out.output);
    }
    std::process::exit(out.code);
}
