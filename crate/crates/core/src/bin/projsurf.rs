fn main() {
    let (out, code) = projsurf::cli::run(std::env::args_os());
    print!("{}", out);
    std::process::exit(code);
}
